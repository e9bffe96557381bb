// elnet: Elliptic-net pairings
// Copyright 2026 The elnet Authors.
// SPDX-License-Identifier: Apache-2.0

#include <elnet/errors.hpp>
#include <elnet/pairing.hpp>

namespace elnet
{
namespace
{
Fe theta_power(const CurveInstance& inst, const Int& e)
{
    const Fe v = raw::pow(inst.theta, e);
    auto s = v.at_level(inst.e());
    if (!s)
        throw ConfigError{"twist Frobenius constant does not lie in F_{p^e}"};
    return *s;
}

Int cyclotomic_value(unsigned k, const Int& p)
{
    Int q;
    switch (k)
    {
    case 12:
    case 24:
    case 48: {
        Int a;
        mpz_pow_ui(a.get_mpz_t(), p.get_mpz_t(), k / 3);
        Int b;
        mpz_pow_ui(b.get_mpz_t(), p.get_mpz_t(), k / 6);
        return a - b + 1;
    }
    case 16:
        mpz_pow_ui(q.get_mpz_t(), p.get_mpz_t(), 8);
        return q + 1;
    }
    throw UsageError{"unsupported embedding degree"};
}

struct NetRun
{
    NetResult res;
    Int m;
};

NetRun run_net(const CurveInstance& inst, const Point& Qt, const Point& Pt, const LoopPlan& plan,
               const PairingOptions& opt)
{
    const NetContext ctx = NetContext::make(inst.Et, Qt, Pt, {opt.modified, inst.k() / 2});
    NetEvalOptions no;
    no.executor = opt.executor;
    no.trace = opt.trace;
    NetRun run{net_eval(ctx, plan, no), plan.value()};
    return run;
}

/// x, y of [m]Q~ with cleared denominators: (S / W^2, T / W^3).
void multiple_coords(const NetRun& run, const Fe& xq, const Fe& inv4y, Fe& W, Fe& S, Fe& T)
{
    const NetBlock& b = run.res.block;
    const Int& m = run.m;
    W = b.W0(m);
    const Fe& wm1 = b.W0(Int{m - 1});
    const Fe& wp1 = b.W0(Int{m + 1});
    const Fe& wm2 = b.W0(Int{m - 2});
    const Fe& wp2 = b.W0(Int{m + 2});
    S = xq * square(W) - wm1 * wp1;
    T = (square(wm1) * wp2 - square(wp1) * wm2) * inv4y;
}
}  // namespace

Curve top_curve(const CurveInstance& inst)
{
    return Curve{inst.E.a.lift(inst.k()), inst.E.b.lift(inst.k())};
}

TwistConstants twist_constants(const CurveInstance& inst)
{
    Uncounted quiet;
    const Int p1 = inst.p - 1;
    const Int p2 = inst.p * inst.p - 1;
    return {theta_power(inst, Int{2 * p1}), theta_power(inst, Int{3 * p1}), theta_power(inst, Int{2 * p2}),
            theta_power(inst, Int{3 * p2})};
}

PairingOutput optimal_ate(const CurveInstance& inst, const Point& Qt, const Point& P, const PairingOptions& opt)
{
    if (Qt.inf || P.inf)
        throw DegeneracyError{"pairing of the point at infinity"};
    const auto& fp = inst.params();
    PairingOutput out;
    out.family = inst.family;
    out.loop = inst.loop();
    const Point Pt = inst.untwist(P);
    const NetRun run = run_net(inst, Qt, Pt, out.loop, opt);
    out.steps = run.res.steps;
    out.additions = run.res.additions;
    out.subtractions = run.res.subtractions;
    const bool neg = out.loop.negative;
    const Fe wm1 = neg ? inverse(run.res.w1) : run.res.w1;

    const Fe xP = Pt.x.demote();
    const Fe& yP = Pt.y;
    const Fe& xq = Qt.x;
    const Fe& yq = Qt.y;

    if (inst.family == Family::bls12 || inst.family == Family::bls24 || inst.family == Family::bls48)
    {
        out.raw = wm1;
    }
    else
    {
        TwistConstants tc;
        Fe inv4y;
        {
            Uncounted quiet;
            tc = twist_constants(inst);
            inv4y = raw::inverse(yq.scaled(4));
        }
        Fe W, S, T;
        multiple_coords(run, xq, inv4y, W, S, T);
        if (neg)
            T = -T;
        const Fe W2 = square(W);
        const Fe W3 = W2 * W;
        const Fe Shat = tc.c2p * W2 * frobenius(xq, 1);
        const Fe That = tc.c3p * W3 * frobenius(yq, 1);
        if (S == Shat)
            throw DegeneracyError{"[m]Q~ and [p]Q~ share an x-coordinate (S = S^)"};
        const Fe dS = S - Shat;
        const Fe l1 = dS * (yP * W3 - T) - (T - That) * (xP * W2 - S);
        if (inst.family == Family::bn)
        {
            const Fe& b = inst.Et.b;
            const Fe W6 = square(W3);
            const Fe bW6 = b * W6;
            const Fe Z = dS * W;
            const Fe SS = S * Shat;
            const Fe TT = T * That;
            const Fe U = bW6.scaled(2) + SS * (S + Shat) - TT.scaled(2);
            const Fe V = (T - That) * (TT - bW6.scaled(3)) + SS.scaled(3) * (S * That - T * Shat);
            const Fe Z2 = square(Z);
            const Fe Z3 = Z2 * Z;
            const Fe X4 = tc.c2p2 * frobenius(xq, 2);
            const Fe Y4 = -(tc.c3p2 * frobenius(yq, 2));
            const Fe l2 = (yP * Z3 - V) * (U - X4 * Z2) - (xP * Z2 - U) * (V - Y4 * Z3);
            out.raw = wm1 * l1 * l2;
            out.bn = BNLineIntermediates{W, S, T, Shat, That, Z, U, V, l1, l2};
        }
        else
        {
            // KSS16: tangent at Q~ with eta^4 = xi and the untwisted coefficient a.
            const Fe& a = inst.E.a;
            const Fe& xi = inst.xi;
            const Fe x2 = square(xq);
            const Fe l2 = (xi * x2.scaled(3) + a) * xP - (xi * yq).scaled(2) * yP + (xi * square(yq)).scaled(2) -
                          (xi * x2 * xq).scaled(3) - a * xq;
            const Fe inner = wm1 * l1;
            out.raw = frobenius(inner, 3) * l2;
            out.kss = KSSLineIntermediates{W, S, T, l1, l2};
        }
    }
    (void)fp;
    if (opt.reduce)
        out.reduced = final_exp(inst, out.raw);
    return out;
}

Fe final_exp(const CurveInstance& inst, const Fe& f)
{
    Uncounted quiet;
    if (f.is_zero())
        throw ZeroInversion{"final exponentiation of zero"};
    const unsigned k = inst.k();
    const Fe g = f.lift(k);
    // Easy part.
    Fe h = frobenius(g, k / 2) * inverse(g);
    if (k != 16)
        h = frobenius(h, k / 6) * h;
    // Hard part: Phi_k(p) / r in base p.
    const Int phi = cyclotomic_value(k, inst.p);
    if (phi % inst.r != 0)
        throw ConfigError{"r does not divide Phi_k(p)"};
    Int e = phi / inst.r;
    std::vector<Int> digits;
    while (e > 0)
    {
        digits.push_back(mod(e, inst.p));
        e /= inst.p;
    }
    std::vector<Fe> base;
    for (std::size_t i = 0; i < digits.size(); ++i)
        base.push_back(i == 0 ? h : frobenius(h, static_cast<unsigned>(i)));
    unsigned bits = 0;
    for (const auto& d : digits)
        bits = std::max(bits, bit_length(d));
    Fe acc = Fe::from_int(*inst.tower, 1, k);
    for (unsigned b = bits; b-- > 0;)
    {
        acc = square(acc);
        for (std::size_t i = 0; i < digits.size(); ++i)
            if (mpz_tstbit(digits[i].get_mpz_t(), b))
                acc = acc * base[i];
    }
    return acc;
}

Fe line_value(const Curve& E, const Point& A, const Point& B, const Point& S)
{
    const Tower& t = S.x.tower();
    const unsigned lvl = S.x.level();
    if (A.inf || B.inf)
        return Fe::from_int(t, 1, lvl);
    if (A.x == B.x && !(A.y == B.y))
        return S.x - A.x;  // vertical
    if (A.x == B.x && A.y.is_zero())
        return S.x - A.x;
    Fe lam;
    if (A.x == B.x)
        lam = (square(A.x).scaled(3) + E.a) * inverse(A.y.scaled(2));
    else
        lam = (B.y - A.y) * inverse(B.x - A.x);
    return S.y - A.y - lam * (S.x - A.x);
}

namespace
{
Fe vertical(const Point& R, const Point& S)
{
    if (R.inf)
        return Fe::from_int(S.x.tower(), 1, S.x.level());
    return S.x - R.x;
}
}  // namespace

Fe miller(const Curve& E, const Int& n, const Point& Q, const Point& S)
{
    Uncounted quiet;
    const Tower& t = S.x.tower();
    const unsigned lvl = S.x.level();
    if (n == 0)
        throw UsageError{"Miller function index must be nonzero"};
    const Int m = abs(n);
    Fe num = Fe::from_int(t, 1, lvl);
    Fe den = Fe::from_int(t, 1, lvl);
    Point T = Q;
    for (unsigned i = bit_length(m) - 1; i-- > 0;)
    {
        const Point T2 = E.dbl(T);
        num = square(num) * line_value(E, T, T, S);
        den = square(den) * vertical(T2, S);
        T = T2;
        if (mpz_tstbit(m.get_mpz_t(), i))
        {
            const Point TQ = E.add(T, Q);
            num = num * line_value(E, T, Q, S);
            den = den * vertical(TQ, S);
            T = TQ;
        }
    }
    Fe f = num * inverse(den);
    if (n < 0)
        f = inverse(f * vertical(T, S));
    return f;
}

Fe miller_optimal_ate(const CurveInstance& inst, const Point& Qt, const Point& P)
{
    Uncounted quiet;
    const unsigned k = inst.k();
    const Curve E = top_curve(inst);
    const Point Q = inst.twist_map(Qt);
    const Point S = Point::affine(P.x.lift(k), P.y.lift(k));
    const auto& fp = inst.params();
    const Int m = fp.loop_c1 * inst.seed.value + fp.loop_c0;
    auto frob = [](const Point& R, unsigned i) {
        return R.inf ? R : Point::affine(frobenius(R.x, i), frobenius(R.y, i));
    };
    const Fe f = miller(E, m, Q, S);
    switch (inst.family)
    {
    case Family::bn: {
        const Point mQ = E.mul(m, Q);
        const Point pQ = frob(Q, 1);
        const Point R = E.add(mQ, pQ);
        const Point p2Q = E.neg(frob(Q, 2));
        return f * line_value(E, mQ, pQ, S) * line_value(E, R, p2Q, S);
    }
    case Family::kss16: {
        const Point mQ = E.mul(m, Q);
        const Fe inner = f * line_value(E, mQ, frob(Q, 1), S);
        return frobenius(inner, 3) * line_value(E, Q, Q, S);
    }
    default:
        return f;
    }
}

PairingOutput tate_net(const CurveInstance& inst, const Point& P, const Point& Q, bool reduce)
{
    const unsigned k = inst.k();
    const NetContext ctx = NetContext::make(inst.E, P, Point::affine(Q.x.lift(k), Q.y.lift(k)), {});
    const LoopPlan plan = LoopPlan::binary(inst.r);
    const NetResult res = net_eval(ctx, plan);
    PairingOutput out;
    out.family = inst.family;
    out.loop = plan;
    out.steps = res.steps;
    out.additions = res.additions;
    out.raw = res.w1;
    if (reduce)
        out.reduced = final_exp(inst, out.raw);
    return out;
}

Fe tate_miller(const CurveInstance& inst, const Point& P, const Point& Q)
{
    const unsigned k = inst.k();
    const Curve E = top_curve(inst);
    const Point Pk = Point::affine(P.x.lift(k), P.y.lift(k));
    const Point Qk = Point::affine(Q.x.lift(k), Q.y.lift(k));
    return final_exp(inst, miller(E, inst.r, Pk, Qk));
}
}  // namespace elnet
