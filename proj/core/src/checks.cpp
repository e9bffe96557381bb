// elnet: Elliptic-net pairings
// Copyright 2026 The elnet Authors.
// SPDX-License-Identifier: Apache-2.0

#include <elnet/checks.hpp>
#include <elnet/errors.hpp>
#include <elnet/pairing.hpp>
#include <elnet/parallel.hpp>
#include <fstream>
#include <functional>
#include <sstream>

namespace elnet
{
namespace
{
std::size_t table_index(const NetTable& t, const Int& u, int v)
{
    if (!t.contains(u, v))
        throw UsageError{"index (" + to_string(u) + "," + std::to_string(v) + ") outside the stored net"};
    return static_cast<std::size_t>(Int{u - t.lo}.get_ui());
}

/// d^n with negative n through the inverse; untallied.
Fe power(const Fe& d, const Int& n)
{
    if (n >= 0)
        return raw::pow(d, n);
    return raw::inverse(raw::pow(d, Int{-n}));
}

NetIndex random_index(Rng& rng, long umax)
{
    const Int u = rng.range(Int{-umax}, Int{umax});
    const int v = static_cast<int>(rng.range(Int{-1}, Int{1}).get_si());
    return {u, v};
}

/// Random (p, q, r, s) whose twelve recurrence indices keep |v| <= 1 and |u| <= bound.
bool sample_tuple(Rng& rng, long umax, long bound, NetIndex (&t)[4])
{
    for (int attempt = 0; attempt < 1000; ++attempt)
    {
        for (auto& x : t)
            x = random_index(rng, umax);
        const NetIndex &p = t[0], &q = t[1], &r = t[2], &s = t[3];
        const NetIndex idx[] = {{p.u + q.u + s.u, p.v + q.v + s.v}, {p.u - q.u, p.v - q.v},
                                {r.u + s.u, r.v + s.v},           {q.u + r.u + s.u, q.v + r.v + s.v},
                                {q.u - r.u, q.v - r.v},           {p.u + s.u, p.v + s.v},
                                {r.u + p.u + s.u, r.v + p.v + s.v}, {r.u - p.u, r.v - p.v},
                                {q.u + s.u, q.v + s.v},           p, q, r};
        bool ok = true;
        for (const auto& i : idx)
            ok = ok && i.v >= -1 && i.v <= 1 && abs(i.u) <= bound;
        // Skip tuples where every term vanishes trivially.
        if (ok && !(p.u == 0 && p.v == 0) && !(q.u == 0 && q.v == 0) && !(r.u == 0 && r.v == 0))
            return true;
    }
    return false;
}

CheckResult recurrence_over(const std::function<Fe(const Int&, int)>& W, Family f, const std::string& name,
                            unsigned samples, unsigned long seed, long umax, long bound)
{
    CheckResult res{name, f, true, {}};
    Rng rng{seed};
    std::size_t nontrivial = 0;
    for (unsigned i = 0; i < samples; ++i)
    {
        NetIndex t[4];
        if (!sample_tuple(rng, umax, bound, t))
        {
            res.pass = false;
            res.detail = "could not sample an admissible tuple";
            return res;
        }
        const Fe r = recurrence_residual(W, t[0], t[1], t[2], t[3]);
        if (!r.is_zero())
        {
            res.pass = false;
            std::ostringstream os;
            os << "residual nonzero at p=(" << t[0].u << "," << t[0].v << ") q=(" << t[1].u << "," << t[1].v
               << ") r=(" << t[2].u << "," << t[2].v << ") s=(" << t[3].u << "," << t[3].v << ")";
            res.detail = os.str();
            return res;
        }
        ++nontrivial;
    }
    res.detail = std::to_string(nontrivial) + " tuples";
    return res;
}

PairingOptions no_reduce()
{
    PairingOptions o;
    o.reduce = false;
    return o;
}

PairingOptions unmodified()
{
    PairingOptions o;
    o.modified = false;
    return o;
}

CheckResult fail(std::string_view name, Family f, std::string detail)
{
    return {std::string{name}, f, false, std::move(detail)};
}

CheckResult pass(std::string_view name, Family f, std::string detail)
{
    return {std::string{name}, f, true, std::move(detail)};
}

NetContext instance_context(const CurveInstance& c, bool modified)
{
    return NetContext::make(c.Et, c.Qt, c.untwist(c.P), {modified, c.k() / 2});
}

CheckResult check_recurrence(const Fixture& fx, const CheckOptions& o)
{
    if (fx.net)
        return check_table_recurrence(*fx.net, fx.instance.family, o);
    const auto& c = fx.instance;
    NaiveNet net{c.Et, c.Qt, c.untwist(c.P)};
    auto W = [&net](const Int& u, int v) { return net.at(u, v); };
    return recurrence_over(W, c.family, "recurrence", o.samples, o.seed, 10, 40);
}

CheckResult check_modified(const Fixture& fx, const CheckOptions& o)
{
    const auto& c = fx.instance;
    Uncounted quiet;
    NaiveNet net{c.Et, c.Qt, c.untwist(c.P)};
    const NetContext ctx = instance_context(c, false);
    const Fe d = ctx.d;
    auto W1 = [&](const Int& u, int v) {
        const Fe w = net.at(u, v);
        return v == 0 ? w : raw::mul(power(d, Int{u * v}), w);
    };
    CheckResult r = recurrence_over(W1, c.family, "modified-recurrence", o.samples, o.seed + 1, 10, 40);
    if (!r.pass)
        return r;
    // The walk on the modified context produces d^n W(n,1).
    const NetContext mctx = instance_context(c, true);
    for (long n : {1L, 2L, 3L, 7L, 22L, 45L})
    {
        const NetResult res = net_eval(mctx, Int{n});
        if (!(res.w1 == W1(Int{n}, 1)) || !(res.w0 == net.w0(Int{n})))
            return fail("modified-recurrence", c.family, "walk disagrees with d^n W(n,1) at n=" + std::to_string(n));
    }
    return r;
}

CheckResult check_psi(const Fixture& fx, const CheckOptions& o)
{
    const auto& c = fx.instance;
    Uncounted quiet;
    Rank1Net psi{c.Et, c.Qt};
    NaiveNet net{c.Et, c.Qt, c.untwist(c.P)};
    const NetContext ctx = instance_context(c, false);
    for (long n = 1; n <= static_cast<long>(o.psi_max); ++n)
    {
        const Int m{n};
        if (!(net.w0(m) == psi.psi(m)))
            return fail("division-polynomial", c.family, "W(n,0) != psi_n at n=" + std::to_string(n));
        if (fx.net && fx.net->contains(m, 0) && !(fx.net->at(m, 0) == psi.psi(m)))
            return fail("division-polynomial", c.family, "stored W(n,0) != psi_n at n=" + std::to_string(n));
        const NetResult r = net_eval(ctx, m);
        if (!(r.w0 == psi.psi(m)) || !(r.w1 == net.w1(m)))
            return fail("division-polynomial", c.family, "walk disagrees with the recurrence at n=" + std::to_string(n));
    }
    return pass("division-polynomial", c.family, "n = 1.." + std::to_string(o.psi_max));
}

CheckResult check_transport(const Fixture& fx, const CheckOptions& o)
{
    const auto& c = fx.instance;
    Uncounted quiet;
    const unsigned k = c.k();
    const Curve Ek = top_curve(c);
    const Point Q = c.twist_map(c.Qt);
    const Point Pk = Point::affine(c.P.x.lift(k), c.P.y.lift(k));
    NaiveNet top{Ek, Q, Pk};
    NaiveNet tw{c.Et, c.Qt, c.untwist(c.P)};
    const long m = static_cast<long>(o.transport_max);
    for (long n = -m; n <= m; ++n)
    {
        if (n == 0)
            continue;
        const Int N{n};
        const Fe t0 = power(c.theta, Int{n * n - 1});
        const Fe t1 = power(c.theta, Int{n * n - n});
        if (!(top.w0(N) == raw::mul(t0, tw.w0(N).lift(k))))
            return fail("twist-transport", c.family, "W(n,0) transport fails at n=" + std::to_string(n));
        if (!(top.w1(N) == raw::mul(t1, tw.w1(N).lift(k))))
            return fail("twist-transport", c.family, "W(n,1) transport fails at n=" + std::to_string(n));
    }
    return pass("twist-transport", c.family, "|n| <= " + std::to_string(m));
}

bool coords_match(const Fe& X, const Fe& Y, const Fe& Zx, const Fe& Zy, const Point& R)
{
    if (R.inf)
        return false;
    return raw::mul(X, raw::inverse(Zx)) == R.x.lift(X.level()) && raw::mul(Y, raw::inverse(Zy)) == R.y.lift(Y.level());
}

CheckResult check_lines(const Fixture& fx, const CheckOptions&)
{
    const auto& c = fx.instance;
    const PairingOutput out = optimal_ate(c, c.Qt, c.P, no_reduce());
    Uncounted quiet;
    const Int m = c.loop().signed_value();
    const Point mQ = c.Et.mul(m, c.Qt);
    if (out.bn)
    {
        const auto& b = *out.bn;
        const Fe W2 = raw::mul(b.W, b.W);
        if (!coords_match(b.S, b.T, W2, raw::mul(W2, b.W), mQ))
            return fail("line-intermediates", c.family, "S/W^2, T/W^3 are not [m]Q~");
        const auto tc = twist_constants(c);
        const Point pQ = Point::affine(raw::mul(tc.c2p, frobenius(c.Qt.x, 1)), raw::mul(tc.c3p, frobenius(c.Qt.y, 1)));
        if (!c.Et.contains(pQ))
            return fail("line-intermediates", c.family, "[p]Q~ is off the twist");
        const Point R = c.Et.add(mQ, pQ);
        const Fe Z2 = raw::mul(b.Z, b.Z);
        if (!coords_match(b.U, b.V, Z2, raw::mul(Z2, b.Z), R))
            return fail("line-intermediates", c.family, "U/Z^2, V/Z^3 are not [m+p]Q~");
        return pass("line-intermediates", c.family, "S,T and U,V match the group law");
    }
    if (out.kss)
    {
        const auto& s = *out.kss;
        const Fe W2 = raw::mul(s.W, s.W);
        if (!coords_match(s.A, s.B, W2, raw::mul(W2, s.W), mQ))
            return fail("line-intermediates", c.family, "A/W^2, B/W^3 are not [x]Q~");
        return pass("line-intermediates", c.family, "A,B match the group law");
    }
    return pass("line-intermediates", c.family, "no line intermediates for this family");
}

CheckResult check_net_miller(const Fixture& fx, const CheckOptions&)
{
    const auto& c = fx.instance;
    const Fe net = *optimal_ate(c, c.Qt, c.P).reduced;
    const Fe unmod = *optimal_ate(c, c.Qt, c.P, unmodified()).reduced;
    const Fe mil = final_exp(c, miller_optimal_ate(c, c.Qt, c.P));
    if (!(net == mil))
        return fail("net-miller", c.family, "net optimal ate differs from the Miller optimal ate");
    if (!(unmod == mil))
        return fail("net-miller", c.family, "unmodified net disagrees with the modified net");
    if (!(raw::pow(net, c.r).is_one()))
        return fail("net-miller", c.family, "reduced value is not an r-th root of unity");
    return pass("net-miller", c.family, "reduced values identical");
}

CheckResult check_tate(const Fixture& fx, const CheckOptions&)
{
    const auto& c = fx.instance;
    const Point Q = c.twist_map(c.Qt);
    const Fe a = *tate_net(c, c.P, Q).reduced;
    const Fe b = tate_miller(c, c.P, Q);
    if (!(a == b))
        return fail("tate", c.family, "W(r,1) Tate differs from the Miller Tate");
    if (a.is_one())
        return fail("tate", c.family, "Tate pairing of the generators is 1");
    return pass("tate", c.family, "reduced values identical");
}

CheckResult check_bilinearity(const Fixture& fx, const CheckOptions& o)
{
    const auto& c = fx.instance;
    Rng rng{o.seed + 7};
    const Fe base = *optimal_ate(c, c.Qt, c.P).reduced;
    if (base.is_one())
        return fail("bilinearity", c.family, "e(Q,P) = 1 on the generators");
    for (unsigned i = 0; i < o.scalars; ++i)
    {
        const Int a = rng.range(Int{1}, Int{c.r - 1});
        const Fe l = *optimal_ate(c, c.Et.mul(a, c.Qt), c.P).reduced;
        const Fe r = *optimal_ate(c, c.Qt, c.E.mul(a, c.P)).reduced;
        const Fe e = raw::pow(base, a);
        if (!(l == e) || !(r == e))
            return fail("bilinearity", c.family, "scalar " + std::to_string(i + 1) + " fails");
    }
    return pass("bilinearity", c.family, std::to_string(o.scalars) + "/" + std::to_string(o.scalars) + " scalars");
}

CheckResult check_parallel(const Fixture& fx, const CheckOptions& o)
{
    const auto& c = fx.instance;
    const NetContext ctx = instance_context(c, true);
    Rng rng{o.seed + 11};
    std::size_t runs = 0;
    for (unsigned procs : {4u, 8u})
        for (StepKind kind : {StepKind::dbl, StepKind::add})
        {
            const StepSchedule& s = StepSchedule::builtin(procs, kind);
            for (unsigned b = 0; b < o.blocks; ++b)
            {
                NetBlock in;
                {
                    Uncounted quiet;
                    in.center = rng.range(Int{4}, Int{1000});
                    for (auto& w : in.w0)
                        w = raw::random(*c.tower, ctx.level0, rng);
                    for (auto& w : in.w1)
                        w = raw::random(*c.tower, ctx.level1, rng);
                }
                Tally seq, par;
                NetBlock a, p;
                {
                    CountScope scope;
                    a = table_step(ctx, in, kind);
                    seq = scope.tally();
                }
                {
                    CountScope scope;
                    p = run_step_parallel(ctx, in, s);
                    par = scope.tally();
                }
                if (!(a == p))
                    return fail("parallel-sequential", c.family, s.name + ": block " + std::to_string(b) + " differs");
                if (!(seq == par))
                    return fail("parallel-sequential", c.family, s.name + ": worker tallies do not sum to the step");
                ++runs;
            }
        }
    return pass("parallel-sequential", c.family, std::to_string(runs) + " steps bit-identical");
}
}  // namespace

// ---------------------------------------------------------------------------

const Fe& NetTable::at(const Int& u, int v) const
{
    const std::size_t i = table_index(*this, u, v);
    return v == 0 ? w0[i] : v == 1 ? w1[i] : wm1[i];
}

Fe& NetTable::at(const Int& u, int v)
{
    const std::size_t i = table_index(*this, u, v);
    return v == 0 ? w0[i] : v == 1 ? w1[i] : wm1[i];
}

NetTable NetTable::of_instance(const CurveInstance& inst, long lo, long hi)
{
    Uncounted quiet;
    NaiveNet net{inst.Et, inst.Qt, inst.untwist(inst.P)};
    NetTable t;
    t.lo = lo;
    t.hi = hi;
    for (long u = lo; u <= hi; ++u)
    {
        t.w0.push_back(net.w0(Int{u}));
        t.w1.push_back(net.w1(Int{u}));
        t.wm1.push_back(net.wm1(Int{u}));
    }
    return t;
}

nlohmann::json NetTable::to_json() const
{
    nlohmann::json j{{"lo", to_string(lo)}, {"hi", to_string(hi)}};
    auto arr = [](const std::vector<Fe>& v) {
        nlohmann::json a = nlohmann::json::array();
        for (const auto& x : v)
            a.push_back(x.to_json());
        return a;
    };
    j["w0"] = arr(w0);
    j["w1"] = arr(w1);
    j["wm1"] = arr(wm1);
    return j;
}

NetTable NetTable::from_json(const Tower& tw, const nlohmann::json& j)
{
    NetTable t;
    t.lo = parse_decimal(j.at("lo").get<std::string>());
    t.hi = parse_decimal(j.at("hi").get<std::string>());
    if (t.hi < t.lo)
        throw ConfigError{"net table has hi < lo"};
    const std::size_t n = Int{t.hi - t.lo + 1}.get_ui();
    auto arr = [&](const char* key, std::vector<Fe>& out) {
        for (const auto& x : j.at(key))
            out.push_back(Fe::from_json(tw, x));
        if (out.size() != n)
            throw ConfigError{std::string{"net table column "} + key + " has the wrong length"};
    };
    arr("w0", t.w0);
    arr("w1", t.w1);
    arr("wm1", t.wm1);
    return t;
}

nlohmann::json Fixture::to_json() const
{
    nlohmann::json j{{"instance", instance.to_json()}};
    if (net)
        j["net"] = net->to_json();
    return j;
}

Fixture Fixture::from_json(const nlohmann::json& j)
{
    try
    {
        Fixture f{CurveInstance::from_json(j.contains("instance") ? j.at("instance") : j), std::nullopt};
        if (j.contains("net"))
            f.net = NetTable::from_json(*f.instance.tower, j.at("net"));
        return f;
    }
    catch (const nlohmann::json::exception& e)
    {
        throw ConfigError{std::string{"fixture: "} + e.what()};
    }
}

Fixture Fixture::load(const std::string& path)
{
    std::ifstream in{path};
    if (!in)
        throw ConfigError{"cannot open fixture " + path};
    try
    {
        return from_json(nlohmann::json::parse(in));
    }
    catch (const nlohmann::json::parse_error& e)
    {
        throw ConfigError{"fixture " + path + ": " + e.what()};
    }
}

const std::vector<std::string_view>& check_names()
{
    static const std::vector<std::string_view> names{
        "recurrence", "modified-recurrence", "division-polynomial", "twist-transport", "line-intermediates",
        "net-miller", "tate",                "bilinearity",         "parallel-sequential"};
    return names;
}

CheckResult check_table_recurrence(const NetTable& t, Family f, const CheckOptions& o)
{
    const long span = static_cast<long>(Int{std::min(Int{abs(t.lo)}, Int{abs(t.hi)})}.get_si());
    auto W = [&t](const Int& u, int v) { return t.at(u, v); };
    return recurrence_over(W, f, "recurrence", o.samples, o.seed, span / 3, span);
}

CheckResult run_check(std::string_view name, const Fixture& fx, const CheckOptions& opt)
{
    using Fn = CheckResult (*)(const Fixture&, const CheckOptions&);
    static const std::map<std::string_view, Fn> table{
        {"recurrence", check_recurrence},     {"modified-recurrence", check_modified},
        {"division-polynomial", check_psi},   {"twist-transport", check_transport},
        {"line-intermediates", check_lines},  {"net-miller", check_net_miller},
        {"tate", check_tate},                 {"bilinearity", check_bilinearity},
        {"parallel-sequential", check_parallel}};
    const auto it = table.find(name);
    if (it == table.end())
        throw UsageError{"unknown check '" + std::string{name} + "'"};
    try
    {
        return it->second(fx, opt);
    }
    catch (const std::exception& e)
    {
        return fail(name, fx.instance.family, std::string{"raised: "} + e.what());
    }
}
}  // namespace elnet
