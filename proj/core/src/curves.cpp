// elnet: Elliptic-net pairings
// Copyright 2026 The elnet Authors.
// SPDX-License-Identifier: Apache-2.0

#include <elnet/curves.hpp>
#include <elnet/errors.hpp>
#include <algorithm>
#include <cctype>
#include <map>
#include <mutex>

namespace elnet
{
namespace
{
const FamilyParams kParams[] = {
    {Family::bn, 12, 6, 2,
     {{1, 6, 24, 36, 36}, 1},
     {{1, 6, 18, 36, 36}, 1},
     {{1, 0, 6}, 1},
     {1, 2, 6, 12}, false, -4, 6, 2},
    {Family::bls12, 12, 6, 2,
     {{1, 1, 0, 2, 0, -2, 1}, 3},
     {{1, 0, -1, 0, 1}, 1},
     {{1, 1}, 1},
     {1, 2, 6, 12}, false, 4, 1, 0},
    {Family::bls24, 24, 6, 4,
     {{1, 1, 1, 0, -1, 2, -1, 0, 1, -2, 1}, 3},
     {{1, 0, 0, 0, -1, 0, 0, 0, 1}, 1},
     {{1, 1}, 1},
     {1, 2, 4, 12, 24}, false, -2, 1, 0},
    {Family::bls48, 48, 6, 8,
     {{1, 1, 1, 0, 0, 0, 0, 0, -1, 2, -1, 0, 0, 0, 0, 0, 1, -2, 1}, 3},
     {{1, 0, 0, 0, 0, 0, 0, 0, -1, 0, 0, 0, 0, 0, 0, 0, 1}, 1},
     {{1, 1}, 1},
     {1, 2, 4, 8, 24, 48}, false, 11, 1, 0},
    {Family::kss16, 16, 4, 4,
     {{3125, 2398, 625, 0, 240, 152, 48, 0, 5, 2, 1}, 980},
     {{625, 0, 0, 0, 48, 0, 0, 0, 1}, 61250},
     {{35, 41, 0, 0, 0, 2}, 35},
     {1, 2, 4, 8, 16}, true, 1, 1, 0},
};

const std::vector<ReferenceRow> kRows = {
    {"bn-128", Family::bn, 128, "2^114+2^101-2^14-1", 280, 280, 116, 6},
    {"bls12-128", Family::bls12, 128, "-2^77+2^50+2^33", 273, 616, 77, 2},
    {"kss16-128", Family::kss16, 128, "2^35-2^32-2^18+2^8+1", 281, 340, 35, 4},
    {"bls24-192", Family::bls24, 192, "-2^56-2^43+2^9-2^6", 427, 558, 56, 3},
    {"bls24-256", Family::bls24, 256, "-2^103-2^101+2^68+2^50", 581, 1028, 103, 3},
    {"bls48-256", Family::bls48, 256, "2^32-2^18-2^10-2^4", 512, 575, 32, 3},
};

Int powm(const Int& b, const Int& e, const Int& m)
{
    Int r;
    mpz_powm(r.get_mpz_t(), b.get_mpz_t(), e.get_mpz_t(), m.get_mpz_t());
    return r;
}

bool exact_embedding_degree(const Int& p, const Int& r, unsigned k)
{
    if (powm(p, Int{k}, r) != 1)
        return false;
    for (unsigned i = 1; i < k; ++i)
        if (powm(p, Int{i}, r) == 1)
            return false;
    return true;
}

std::vector<Int> trace_candidates(const Int& te, const Int& q, bool quartic)
{
    const Int disc = 4 * q - te * te;
    std::vector<Int> out{te, -te};
    if (quartic)
    {
        if (auto f = exact_sqrt(disc))
        {
            out.push_back(*f);
            out.push_back(-*f);
        }
        return out;
    }
    if (disc % 3 == 0)
        if (auto f = exact_sqrt(Int{disc / 3}))
            for (int s1 : {1, -1})
            {
                const Int v = te + s1 * 3 * *f;
                if (v % 2 == 0)
                {
                    out.push_back(v / 2);
                    out.push_back(-v / 2);
                }
            }
    return out;
}

/// Group order among `orders`, decided by random points; nullopt if undecided.
std::optional<Int> identify_order(const Curve& c, unsigned level, std::vector<Int> orders, Rng& rng)
{
    std::sort(orders.begin(), orders.end());
    orders.erase(std::unique(orders.begin(), orders.end()), orders.end());
    for (int i = 0; i < 40 && orders.size() > 0; ++i)
    {
        const Point pt = c.random_point(level, rng);
        std::vector<Int> keep;
        for (const auto& n : orders)
            if (c.mul(n, pt).inf)
                keep.push_back(n);
        orders = std::move(keep);
        if (orders.size() == 1 && i >= 3)
            return orders.front();
    }
    return std::nullopt;
}

Int small_search(unsigned i)
{
    // 0, 1, -1, 2, -2, ...
    if (i == 0)
        return 0;
    const long m = static_cast<long>((i + 1) / 2);
    return (i % 2) ? Int{m} : Int{-m};
}

Int beta_search(unsigned i)
{
    // -1, -2, 2, -3, 3, ...
    if (i == 0)
        return -1;
    const long m = static_cast<long>(i / 2 + 1);
    return (i % 2) ? Int{-m} : Int{m};
}
}  // namespace

std::string_view family_name(Family f)
{
    switch (f)
    {
    case Family::bn:
        return "bn";
    case Family::bls12:
        return "bls12";
    case Family::bls24:
        return "bls24";
    case Family::bls48:
        return "bls48";
    case Family::kss16:
        return "kss16";
    }
    return "?";
}

Family parse_family(std::string_view s)
{
    std::string t;
    for (char c : s)
        t.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    for (Family f : kAllFamilies)
        if (family_name(f) == t)
            return f;
    throw UsageError{"unknown family '" + std::string{s} + "' (expected bn, bls12, bls24, bls48 or kss16)"};
}

std::optional<Int> RationalPoly::eval(const Int& x) const
{
    Int acc = 0;
    for (auto it = num.rbegin(); it != num.rend(); ++it)
        acc = acc * x + *it;
    if (acc % den != 0)
        return std::nullopt;
    return Int{acc / den};
}

const FamilyParams& family_params(Family f)
{
    for (const auto& p : kParams)
        if (p.family == f)
            return p;
    throw UsageError{"unknown family"};
}

FamilyValues evaluate_family(Family f, const Int& x)
{
    const auto& fp = family_params(f);
    const std::string at = " at x = " + to_string(x);
    auto p = fp.p.eval(x);
    if (!p)
        throw ConfigError{"p(x) is not integral" + at};
    auto r = fp.r.eval(x);
    if (!r)
        throw ConfigError{"r(x) is not integral" + at};
    auto t = fp.t.eval(x);
    if (!t)
        throw ConfigError{"t(x) is not integral" + at};
    if (*p <= 3 || !is_probable_prime(*p))
        throw ConfigError{"p(x) is not prime" + at};
    if (*r <= 3 || !is_probable_prime(*r))
        throw ConfigError{"r(x) is not prime" + at};
    if ((*p + 1 - *t) % *r != 0)
        throw ConfigError{"r(x) does not divide p(x) + 1 - t(x)" + at};
    return {*p, *r, *t};
}

LoopPlan loop_plan(Family f, const Seed& seed)
{
    const auto& fp = family_params(f);
    if (seed.expr)
        return LoopPlan::from_power_sum(seed.expr->affine(fp.loop_c1, fp.loop_c0));
    return LoopPlan::binary(Int{fp.loop_c1 * seed.value + fp.loop_c0});
}

const std::vector<ReferenceRow>& reference_rows()
{
    return kRows;
}

const ReferenceRow& reference_row(std::string_view id)
{
    for (const auto& r : kRows)
        if (r.id == id)
            return r;
    throw UsageError{"unknown parameter row '" + std::string{id} + "'"};
}

const ReferenceRow& reference_row(Family f)
{
    for (const auto& r : kRows)
        if (r.family == f)
            return r;
    throw UsageError{"no parameter row for family"};
}

std::optional<Int> search_desk_seed(Family f, const Int& limit)
{
    const auto& fp = family_params(f);
    for (Int n = 2; n <= limit; ++n)
        for (const Int& x : {Int{-n}, n})
        {
            auto p = fp.p.eval(x);
            auto r = fp.r.eval(x);
            auto t = fp.t.eval(x);
            if (!p || !r || !t || *p <= 3 || *r <= 3)
                continue;
            if (!is_probable_prime(*r) || !is_probable_prime(*p))
                continue;
            if ((*p + 1 - *t) % *r != 0 || !exact_embedding_degree(*p, *r, fp.k))
                continue;
            return x;
        }
    return std::nullopt;
}

Int desk_seed(Family f)
{
    switch (f)
    {
    case Family::bn:
        return -2;
    case Family::bls12:
        return -2;
    case Family::bls24:
        return -5;
    case Family::bls48:
        return -587;
    case Family::kss16:
        return 3455;
    }
    throw UsageError{"unknown family"};
}

Int trace_power(const Int& t, const Int& p, unsigned n)
{
    Int a = 2, b = t;
    if (n == 0)
        return a;
    for (unsigned i = 1; i < n; ++i)
    {
        Int c = t * b - p * a;
        a = b;
        b = c;
    }
    return b;
}

// ---------------------------------------------------------------- points

bool operator==(const Point& a, const Point& b)
{
    if (a.inf || b.inf)
        return a.inf == b.inf;
    return a.x == b.x && a.y == b.y;
}

nlohmann::json Point::to_json() const
{
    if (inf)
        return nullptr;
    return nlohmann::json::array({x.to_json(), y.to_json()});
}

Point Point::from_json(const Tower& t, const nlohmann::json& j)
{
    if (j.is_null())
        return infinity();
    if (!j.is_array() || j.size() != 2)
        throw ConfigError{"point must be null or [x, y]"};
    return affine(Fe::from_json(t, j[0]), Fe::from_json(t, j[1]));
}

bool Curve::contains(const Point& pt) const
{
    if (pt.inf)
        return true;
    return square(pt.y) == square(pt.x) * pt.x + a * pt.x + b;
}

Point Curve::neg(const Point& pt) const
{
    if (pt.inf)
        return pt;
    return Point::affine(pt.x, -pt.y);
}

Point Curve::dbl(const Point& pt) const
{
    if (pt.inf || pt.y.is_zero())
        return Point::infinity();
    const Fe x2 = square(pt.x);
    const Fe num = x2.scaled(3) + a;
    const Fe lam = num * inverse(pt.y.scaled(2));
    const Fe x3 = square(lam) - pt.x.scaled(2);
    const Fe y3 = lam * (pt.x - x3) - pt.y;
    return Point::affine(x3, y3);
}

Point Curve::add(const Point& p, const Point& q) const
{
    if (p.inf)
        return q;
    if (q.inf)
        return p;
    if (p.x == q.x)
        return p.y == q.y ? dbl(p) : Point::infinity();
    const Fe lam = (q.y - p.y) * inverse(q.x - p.x);
    const Fe x3 = square(lam) - p.x - q.x;
    const Fe y3 = lam * (p.x - x3) - p.y;
    return Point::affine(x3, y3);
}

Point Curve::mul(const Int& n, const Point& pt) const
{
    if (n == 0 || pt.inf)
        return Point::infinity();
    const Point base = n < 0 ? neg(pt) : pt;
    const Int m = abs(n);
    Point acc = base;
    for (unsigned i = bit_length(m) - 1; i-- > 0;)
    {
        acc = dbl(acc);
        if (mpz_tstbit(m.get_mpz_t(), i))
            acc = add(acc, base);
    }
    return acc;
}

Point Curve::random_point(unsigned level, Rng& rng) const
{
    const Tower& t = a.tower();
    for (;;)
    {
        const Fe x = raw::random(t, level, rng);
        const Fe rhs = square(x) * x + a * x + b;
        if (auto y = raw::sqrt(rhs, rng))
        {
            if (rng.below(2) == 1)
                *y = -*y;
            return Point::affine(x, y->lift(level));
        }
    }
}

// ---------------------------------------------------------------- instances

Point CurveInstance::twist_map(const Point& pt) const
{
    if (pt.inf)
        return pt;
    Uncounted quiet;
    if (!Et.contains(pt))
        throw NotOnCurve{"point is not on the twist"};
    return Point::affine(pt.x * theta2, pt.y * theta3);
}

Point CurveInstance::untwist(const Point& pt) const
{
    if (pt.inf)
        return pt;
    Uncounted quiet;
    return Point::affine(pt.x * theta_inv2, pt.y * theta_inv3);
}

namespace
{
void finish_theta(CurveInstance& c)
{
    const auto& fp = c.params();
    c.theta = Fe::generator(*c.tower, fp.k);
    c.theta2 = raw::mul(c.theta, c.theta);
    c.theta3 = raw::mul(c.theta2, c.theta);
    c.theta_inv2 = raw::inverse(c.theta2);
    c.theta_inv3 = raw::inverse(c.theta3);
    c.xi = *raw::pow(c.theta, Int{fp.delta}).at_level(fp.e);
}

Curve twist_curve(const CurveInstance& c)
{
    const Fe inv_xi = raw::inverse(c.xi);
    if (c.params().quartic)
        return Curve{raw::mul(c.E.a.lift(c.e()), inv_xi), Fe{*c.tower, c.e()}};
    return Curve{Fe{*c.tower, c.e()}, raw::mul(c.E.b.lift(c.e()), inv_xi)};
}
}  // namespace

CurveInstance instantiate(Family f, const Seed& seed, const InstantiateOptions& opt)
{
    Uncounted quiet;
    const auto& fp = family_params(f);
    const FamilyValues v = evaluate_family(f, seed.value);
    if (!exact_embedding_degree(v.p, v.r, fp.k))
        throw ConfigError{"embedding degree of r in p is not " + std::to_string(fp.k)};

    CurveInstance c;
    c.family = f;
    c.seed = seed;
    c.p = v.p;
    c.r = v.r;
    c.t = v.t;
    c.cofactor = (v.p + 1 - v.t) / v.r;
    Rng rng{opt.rng_seed};

    // Tower below the twist level.
    std::vector<TowerStep> steps;
    std::shared_ptr<const Tower> partial;
    const auto& chain = fp.chain;
    std::size_t idx = 1;
    for (; idx < chain.size() && chain[idx - 1] < fp.e; ++idx)
    {
        const unsigned below = chain[idx - 1];
        const unsigned degree = chain[idx] / below;
        bool found = false;
        for (unsigned i = 0; i < 400 && !found; ++i)
        {
            TowerStep st{below, degree, below == 1 ? beta_search(i) : small_search(i), below != 1};
            auto trial = steps;
            trial.push_back(st);
            try
            {
                partial = Tower::make(v.p, trial);
                steps = std::move(trial);
                found = true;
            }
            catch (const ConfigError&)
            {}
        }
        if (!found)
            throw ConfigError{"no irreducible binomial found above level " + std::to_string(below)};
    }

    // The twist step fixes xi = g_e + c; the remaining steps adjoin pure generators.
    const Int te = trace_power(v.t, v.p, fp.e);
    Int qe;
    mpz_pow_ui(qe.get_mpz_t(), v.p.get_mpz_t(), fp.e);
    const auto cands = trace_candidates(te, qe, fp.quartic);
    std::vector<Int> orders;
    for (const auto& tr : cands)
        orders.push_back(qe + 1 - tr);

    // Base curve over F_p.
    {
        const auto base_traces = trace_candidates(v.t, v.p, fp.quartic);
        std::vector<Int> base_orders;
        for (const auto& tr : base_traces)
            base_orders.push_back(v.p + 1 - tr);
        auto base_tower = Tower::make(v.p, {});
        bool found = false;
        for (unsigned i = 0; i < 200 && !found; ++i)
        {
            const Int coeff = i == 0 ? Int{fp.default_coeff} : small_search(i);
            if (i > 0 && coeff == fp.default_coeff)
                continue;
            if (mod(coeff, v.p) == 0)
                continue;
            Curve E = fp.quartic ? Curve{Fe::from_int(*base_tower, coeff), Fe{*base_tower, 1}}
                                 : Curve{Fe{*base_tower, 1}, Fe::from_int(*base_tower, coeff)};
            auto n = identify_order(E, 1, base_orders, rng);
            if (n && *n == v.p + 1 - v.t)
            {
                c.E.a = Fe{};
                c.E.b = Fe{};
                c.E = fp.quartic ? Curve{Fe::from_int(*partial, coeff), Fe{*partial, 1}}
                                 : Curve{Fe{*partial, 1}, Fe::from_int(*partial, coeff)};
                found = true;
            }
        }
        if (!found)
            throw ConfigError{"no curve coefficient gives order p + 1 - t"};
    }
    const Int coeff = fp.quartic ? c.E.a.coeffs()[0] : c.E.b.coeffs()[0];

    bool found = false;
    for (unsigned i = 0; i < 400 && !found; ++i)
    {
        auto trial = steps;
        trial.push_back({chain[idx - 1], chain[idx] / chain[idx - 1], small_search(i), true});
        for (std::size_t j = idx + 1; j < chain.size(); ++j)
            trial.push_back({chain[j - 1], chain[j] / chain[j - 1], 0, true});
        std::shared_ptr<const Tower> tower;
        try
        {
            tower = Tower::make(v.p, trial, {fp.delta, fp.e});
        }
        catch (const ConfigError&)
        {
            continue;
        }
        CurveInstance cand = c;
        cand.tower = tower;
        cand.E = fp.quartic ? Curve{Fe::from_int(*tower, coeff), Fe{*tower, 1}}
                            : Curve{Fe{*tower, 1}, Fe::from_int(*tower, coeff)};
        finish_theta(cand);
        cand.Et = twist_curve(cand);
        auto n = identify_order(cand.Et, fp.e, orders, rng);
        if (!n || *n % v.r != 0 || *n == qe + 1 - te)
            continue;
        cand.twist_order = *n;
        c = std::move(cand);
        found = true;
    }
    if (!found)
        throw ConfigError{"no twist with r-torsion found over F_{p^" + std::to_string(fp.e) + "}"};

    if (opt.generators)
    {
        for (int tries = 0;; ++tries)
        {
            if (tries > 64)
                throw ConfigError{"could not find a G1 generator"};
            const Point pt = c.E.mul(c.cofactor, c.E.random_point(1, rng));
            if (!pt.inf && c.E.mul(c.r, pt).inf)
            {
                c.P = pt;
                break;
            }
        }
        const Int h2 = c.twist_order / c.r;
        for (int tries = 0;; ++tries)
        {
            if (tries > 64)
                throw ConfigError{"could not find a G2 generator on the twist"};
            const Point pt = c.Et.mul(h2, c.Et.random_point(fp.e, rng));
            if (!pt.inf && c.Et.mul(c.r, pt).inf)
            {
                c.Qt = pt;
                break;
            }
        }
    }
    return c;
}

const CurveInstance& desk_instance(Family f)
{
    static std::mutex mu;
    static std::map<Family, std::unique_ptr<CurveInstance>> cache;
    std::lock_guard lock{mu};
    auto& slot = cache[f];
    if (!slot)
        slot = std::make_unique<CurveInstance>(instantiate(f, Seed{desk_seed(f), std::nullopt}));
    return *slot;
}

nlohmann::json CurveInstance::to_json() const
{
    nlohmann::json j;
    j["family"] = std::string{family_name(family)};
    j["seed"] = seed.str();
    j["x"] = to_string(seed.value);
    j["p"] = to_string(p);
    j["r"] = to_string(r);
    j["t"] = to_string(t);
    j["cofactor"] = to_string(cofactor);
    j["twist_order"] = to_string(twist_order);
    j["tower"] = tower->to_json();
    j["curve"] = {{"a", E.a.to_json()}, {"b", E.b.to_json()}};
    j["twist"] = {{"a", Et.a.to_json()}, {"b", Et.b.to_json()}};
    j["P"] = P.to_json();
    j["Qt"] = Qt.to_json();
    return j;
}

CurveInstance CurveInstance::from_json(const nlohmann::json& j)
{
    Uncounted quiet;
    try
    {
        CurveInstance c;
        c.family = parse_family(j.at("family").get<std::string>());
        c.seed = parse_seed(j.at("seed").get<std::string>());
        if (c.seed.value != parse_decimal(j.at("x").get<std::string>()))
            throw ConfigError{"seed expression and x disagree"};
        const auto v = evaluate_family(c.family, c.seed.value);
        c.p = parse_decimal(j.at("p").get<std::string>());
        c.r = parse_decimal(j.at("r").get<std::string>());
        c.t = parse_decimal(j.at("t").get<std::string>());
        if (c.p != v.p || c.r != v.r || c.t != v.t)
            throw ConfigError{"p, r, t do not match the family polynomials at x"};
        c.cofactor = parse_decimal(j.at("cofactor").get<std::string>());
        c.twist_order = parse_decimal(j.at("twist_order").get<std::string>());
        if (c.cofactor * c.r != c.p + 1 - c.t || c.twist_order % c.r != 0)
            throw ConfigError{"group orders are inconsistent"};
        c.tower = Tower::from_json(j.at("tower"));
        if (c.tower->p() != c.p || c.tower->top() != c.k())
            throw ConfigError{"tower does not match the instance"};
        c.E = {Fe::from_json(*c.tower, j.at("curve").at("a")), Fe::from_json(*c.tower, j.at("curve").at("b"))};
        c.Et = {Fe::from_json(*c.tower, j.at("twist").at("a")), Fe::from_json(*c.tower, j.at("twist").at("b"))};
        finish_theta(c);
        const Curve expect = twist_curve(c);
        if (!(expect.a == c.Et.a) || !(expect.b == c.Et.b))
            throw ConfigError{"twist coefficients do not match the tower's theta"};
        c.P = Point::from_json(*c.tower, j.at("P"));
        c.Qt = Point::from_json(*c.tower, j.at("Qt"));
        if (!c.E.contains(c.P) || !c.Et.contains(c.Qt))
            throw ConfigError{"generator not on its curve"};
        if (!c.E.mul(c.r, c.P).inf || !c.Et.mul(c.r, c.Qt).inf)
            throw ConfigError{"generator is not r-torsion"};
        return c;
    }
    catch (const nlohmann::json::exception& e)
    {
        throw ConfigError{std::string{"malformed instance document: "} + e.what()};
    }
    catch (const UsageError& e)
    {
        throw ConfigError{std::string{"malformed instance document: "} + e.what()};
    }
}
}  // namespace elnet
