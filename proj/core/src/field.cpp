// elnet: Elliptic-net pairings
// Copyright 2026 The elnet Authors.
// SPDX-License-Identifier: Apache-2.0

#include <elnet/errors.hpp>
#include <elnet/field.hpp>
#include <algorithm>

namespace elnet
{
namespace
{
using Vec = std::vector<Int>;

void copy_n(unsigned n, const Int* a, Int* o)
{
    if (a != o)
        std::copy(a, a + n, o);
}
}  // namespace

// ---------------------------------------------------------------- Tower

bool Tower::has_level(unsigned n) const
{
    return std::find(levels_.begin(), levels_.end(), n) != levels_.end();
}

std::size_t Tower::step_index(unsigned n) const
{
    for (std::size_t j = 0; j < steps_.size(); ++j)
        if (steps_[j].top() == n)
            return j;
    throw UsageError{"level " + std::to_string(n) + " is not on the tower"};
}

void Tower::reduce(Int& x) const
{
    mpz_mod(x.get_mpz_t(), x.get_mpz_t(), p_.get_mpz_t());
}

void Tower::add(unsigned n, const Int* a, const Int* b, Int* o) const
{
    for (unsigned i = 0; i < n; ++i)
    {
        mpz_add(o[i].get_mpz_t(), a[i].get_mpz_t(), b[i].get_mpz_t());
        if (o[i] >= p_)
            o[i] -= p_;
    }
}

void Tower::sub(unsigned n, const Int* a, const Int* b, Int* o) const
{
    for (unsigned i = 0; i < n; ++i)
    {
        mpz_sub(o[i].get_mpz_t(), a[i].get_mpz_t(), b[i].get_mpz_t());
        if (sgn(o[i]) < 0)
            o[i] += p_;
    }
}

void Tower::neg(unsigned n, const Int* a, Int* o) const
{
    for (unsigned i = 0; i < n; ++i)
        o[i] = a[i] == 0 ? Int{0} : Int{p_ - a[i]};
}

void Tower::scale(unsigned n, const Int* a, const Int& s, Int* o) const
{
    for (unsigned i = 0; i < n; ++i)
    {
        mpz_mul(o[i].get_mpz_t(), a[i].get_mpz_t(), s.get_mpz_t());
        reduce(o[i]);
    }
}

void Tower::mul_gen(unsigned n, const Int* a, Int* o) const
{
    const auto j = step_index(n);
    const unsigned m = steps_[j].below;
    const unsigned b = steps_[j].degree;
    Vec t(n);
    mul_gamma(j, a + (b - 1) * m, t.data());
    for (unsigned i = 1; i < b; ++i)
        std::copy(a + (i - 1) * m, a + i * m, t.begin() + i * m);
    std::copy(t.begin(), t.end(), o);
}

void Tower::mul_gamma(std::size_t j, const Int* a, Int* o) const
{
    const auto& st = steps_[j];
    const unsigned m = st.below;
    Vec t(m);
    scale(m, a, st.c0, t.data());
    if (st.c1)
    {
        Vec g(m);
        mul_gen(m, a, g.data());
        add(m, t.data(), g.data(), t.data());
    }
    std::copy(t.begin(), t.end(), o);
}

void Tower::mul(unsigned n, const Int* a, const Int* b, Int* o) const
{
    if (n == 1)
    {
        Int t;
        mpz_mul(t.get_mpz_t(), a[0].get_mpz_t(), b[0].get_mpz_t());
        reduce(t);
        o[0] = std::move(t);
        return;
    }
    const auto j = step_index(n);
    const unsigned m = steps_[j].below;
    if (steps_[j].degree == 2)
    {
        Vec v0(m), v1(m), s(m), t(m), u(m);
        mul(m, a, b, v0.data());
        mul(m, a + m, b + m, v1.data());
        add(m, a, a + m, s.data());
        add(m, b, b + m, t.data());
        mul(m, s.data(), t.data(), u.data());
        sub(m, u.data(), v0.data(), u.data());
        sub(m, u.data(), v1.data(), o + m);
        mul_gamma(j, v1.data(), v1.data());
        add(m, v0.data(), v1.data(), o);
        return;
    }
    // Karatsuba over X^3 = gamma.
    const Int* a0 = a;
    const Int* a1 = a + m;
    const Int* a2 = a + 2 * m;
    const Int* b0 = b;
    const Int* b1 = b + m;
    const Int* b2 = b + 2 * m;
    Vec v0(m), v1(m), v2(m), s(m), t(m), u(m), c0(m), c1(m), c2(m);
    mul(m, a0, b0, v0.data());
    mul(m, a1, b1, v1.data());
    mul(m, a2, b2, v2.data());

    add(m, a1, a2, s.data());
    add(m, b1, b2, t.data());
    mul(m, s.data(), t.data(), u.data());
    sub(m, u.data(), v1.data(), u.data());
    sub(m, u.data(), v2.data(), u.data());
    mul_gamma(j, u.data(), u.data());
    add(m, v0.data(), u.data(), c0.data());

    add(m, a0, a1, s.data());
    add(m, b0, b1, t.data());
    mul(m, s.data(), t.data(), u.data());
    sub(m, u.data(), v0.data(), u.data());
    sub(m, u.data(), v1.data(), u.data());
    mul_gamma(j, v2.data(), s.data());
    add(m, u.data(), s.data(), c1.data());

    add(m, a0, a2, s.data());
    add(m, b0, b2, t.data());
    mul(m, s.data(), t.data(), u.data());
    sub(m, u.data(), v0.data(), u.data());
    sub(m, u.data(), v2.data(), u.data());
    add(m, u.data(), v1.data(), c2.data());

    std::copy(c0.begin(), c0.end(), o);
    std::copy(c1.begin(), c1.end(), o + m);
    std::copy(c2.begin(), c2.end(), o + 2 * m);
}

void Tower::sqr(unsigned n, const Int* a, Int* o) const
{
    if (n == 1)
    {
        Int t;
        mpz_mul(t.get_mpz_t(), a[0].get_mpz_t(), a[0].get_mpz_t());
        reduce(t);
        o[0] = std::move(t);
        return;
    }
    const auto j = step_index(n);
    const unsigned m = steps_[j].below;
    if (steps_[j].degree == 2)
    {
        Vec v0(m), v1(m), s(m), u(m);
        sqr(m, a, v0.data());
        sqr(m, a + m, v1.data());
        add(m, a, a + m, s.data());
        sqr(m, s.data(), u.data());
        sub(m, u.data(), v0.data(), u.data());
        sub(m, u.data(), v1.data(), o + m);
        mul_gamma(j, v1.data(), v1.data());
        add(m, v0.data(), v1.data(), o);
        return;
    }
    const Int* a0 = a;
    const Int* a1 = a + m;
    const Int* a2 = a + 2 * m;
    Vec s0(m), s1(m), s2(m), s3(m), s4(m), t(m), c0(m), c1(m), c2(m);
    sqr(m, a0, s0.data());
    mul(m, a0, a1, s1.data());
    add(m, s1.data(), s1.data(), s1.data());
    sub(m, a0, a1, t.data());
    add(m, t.data(), a2, t.data());
    sqr(m, t.data(), s2.data());
    mul(m, a1, a2, s3.data());
    add(m, s3.data(), s3.data(), s3.data());
    sqr(m, a2, s4.data());

    mul_gamma(j, s3.data(), t.data());
    add(m, s0.data(), t.data(), c0.data());
    mul_gamma(j, s4.data(), t.data());
    add(m, s1.data(), t.data(), c1.data());
    add(m, s1.data(), s2.data(), c2.data());
    add(m, c2.data(), s3.data(), c2.data());
    sub(m, c2.data(), s0.data(), c2.data());
    sub(m, c2.data(), s4.data(), c2.data());

    std::copy(c0.begin(), c0.end(), o);
    std::copy(c1.begin(), c1.end(), o + m);
    std::copy(c2.begin(), c2.end(), o + 2 * m);
}

void Tower::mul_sub(unsigned n, const Int* a, unsigned m, const Int* b, Int* o) const
{
    if (m == n)
    {
        mul(n, a, b, o);
        return;
    }
    for (unsigned i = 0; i < n; i += m)
        mul(m, a + i, b, o + i);
}

bool Tower::inv(unsigned n, const Int* a, Int* o) const
{
    if (n == 1)
    {
        Int t;
        if (mpz_invert(t.get_mpz_t(), a[0].get_mpz_t(), p_.get_mpz_t()) == 0)
            return false;
        o[0] = std::move(t);
        return true;
    }
    const auto j = step_index(n);
    const unsigned m = steps_[j].below;
    if (steps_[j].degree == 2)
    {
        Vec t(m), u(m), ti(m), o0(m), o1(m);
        sqr(m, a, t.data());
        sqr(m, a + m, u.data());
        mul_gamma(j, u.data(), u.data());
        sub(m, t.data(), u.data(), t.data());
        if (!inv(m, t.data(), ti.data()))
            return false;
        mul(m, a, ti.data(), o0.data());
        mul(m, a + m, ti.data(), o1.data());
        neg(m, o1.data(), o1.data());
        std::copy(o0.begin(), o0.end(), o);
        std::copy(o1.begin(), o1.end(), o + m);
        return true;
    }
    const Int* a0 = a;
    const Int* a1 = a + m;
    const Int* a2 = a + 2 * m;
    Vec A(m), B(m), C(m), F(m), t(m), u(m), Fi(m);
    sqr(m, a0, A.data());
    mul(m, a1, a2, t.data());
    mul_gamma(j, t.data(), t.data());
    sub(m, A.data(), t.data(), A.data());

    sqr(m, a2, B.data());
    mul_gamma(j, B.data(), B.data());
    mul(m, a0, a1, t.data());
    sub(m, B.data(), t.data(), B.data());

    sqr(m, a1, C.data());
    mul(m, a0, a2, t.data());
    sub(m, C.data(), t.data(), C.data());

    mul(m, a2, B.data(), t.data());
    mul(m, a1, C.data(), u.data());
    add(m, t.data(), u.data(), t.data());
    mul_gamma(j, t.data(), t.data());
    mul(m, a0, A.data(), F.data());
    add(m, F.data(), t.data(), F.data());
    if (!inv(m, F.data(), Fi.data()))
        return false;
    mul(m, A.data(), Fi.data(), o);
    mul(m, B.data(), Fi.data(), o + m);
    mul(m, C.data(), Fi.data(), o + 2 * m);
    return true;
}

void Tower::frob(unsigned n, const Int* a, unsigned power, Int* o) const
{
    power %= n;
    if (n == 1 || power == 0)
    {
        copy_n(n, a, o);
        return;
    }
    const auto j = step_index(n);
    const unsigned m = steps_[j].below;
    const unsigned b = steps_[j].degree;
    Vec out(n);
    Vec t(m);
    for (unsigned i = 0; i < b; ++i)
    {
        frob(m, a + i * m, power, t.data());
        if (i == 0 || kappa_one_[j][power][i])
            std::copy(t.begin(), t.end(), out.begin() + i * m);
        else
            mul(m, t.data(), kappa_[j][power][i].data(), out.data() + i * m);
    }
    std::copy(out.begin(), out.end(), o);
}

void Tower::pow_raw(unsigned n, const Int* a, const Int& e, Int* o) const
{
    Vec acc(n, Int{0});
    acc[0] = 1;
    Vec base(a, a + n);
    const unsigned bits = bit_length(e);
    for (unsigned i = bits; i-- > 0;)
    {
        sqr(n, acc.data(), acc.data());
        if (mpz_tstbit(e.get_mpz_t(), i))
            mul(n, acc.data(), base.data(), acc.data());
    }
    std::copy(acc.begin(), acc.end(), o);
}

void Tower::build_frobenius()
{
    kappa_.assign(steps_.size(), {});
    kappa_one_.assign(steps_.size(), {});
    for (std::size_t j = 0; j < steps_.size(); ++j)
    {
        const auto& st = steps_[j];
        const unsigned n = st.top();
        const unsigned m = st.below;
        Vec gamma(m, Int{0});
        gamma[0] = mod(st.c0, p_);
        if (st.c1)
            gamma[m / steps_[step_index(m)].degree] = 1;  // g_m is the second chunk's unit
        Vec k1(m);
        pow_raw(m, gamma.data(), Int{(p_ - 1) / st.degree}, k1.data());

        kappa_[j].assign(n, {});
        kappa_one_[j].assign(n, {});
        Vec prev = k1;
        for (unsigned k = 1; k < n; ++k)
        {
            Vec kk(m);
            if (k == 1)
                kk = k1;
            else
            {
                Vec f(m);
                frob(m, prev.data(), 1, f.data());
                mul(m, k1.data(), f.data(), kk.data());
            }
            prev = kk;
            auto& powers = kappa_[j][k];
            auto& ones = kappa_one_[j][k];
            powers.assign(st.degree, Vec(m, Int{0}));
            ones.assign(st.degree, false);
            powers[0][0] = 1;
            ones[0] = true;
            for (unsigned i = 1; i < st.degree; ++i)
            {
                mul(m, powers[i - 1].data(), kk.data(), powers[i].data());
                ones[i] = powers[i][0] == 1 &&
                          std::all_of(powers[i].begin() + 1, powers[i].end(), [](const Int& x) { return x == 0; });
            }
        }
    }
}

std::shared_ptr<const Tower> Tower::make(Int p, std::vector<TowerStep> steps, TwistSpec twist)
{
    if (p <= 3 || !is_probable_prime(p))
        throw ConfigError{"tower modulus " + to_string(p) + " is not a prime greater than 3"};
    std::shared_ptr<Tower> t{new Tower};
    t->p_ = std::move(p);
    t->levels_ = {1};
    unsigned cur = 1;
    for (const auto& st : steps)
    {
        if (st.below != cur)
            throw ConfigError{"tower steps do not chain at level " + std::to_string(cur)};
        if (st.degree != 2 && st.degree != 3)
            throw ConfigError{"tower step degree must be 2 or 3"};
        if (st.below == 1 && st.c1)
            throw ConfigError{"the first tower step takes a constant non-residue"};
        if (st.top() > kMaxLevel)
            throw ConfigError{"tower level exceeds " + std::to_string(kMaxLevel)};
        if ((t->p_ - 1) % st.degree != 0)
            throw ConfigError{"step degree " + std::to_string(st.degree) + " does not divide p-1"};
        cur = st.top();
        t->levels_.push_back(cur);
    }
    t->steps_ = std::move(steps);
    t->twist_ = twist;
    t->build_frobenius();

    for (const auto& st : t->steps_)
    {
        Fe gamma = Fe::from_int(*t, st.c0, st.below);
        if (st.c1)
            gamma += Fe::generator(*t, st.below);
        if (gamma.is_zero() || raw::is_power(gamma, st.degree))
            throw ConfigError{"X^" + std::to_string(st.degree) + " - gamma is reducible over level " +
                              std::to_string(st.below)};
    }
    if (twist.delta != 0)
    {
        if (!t->has_level(twist.e) || twist.e * twist.delta != t->top())
            throw ConfigError{"twist level does not match the tower top"};
        const Fe theta = Fe::generator(*t, t->top());
        const Fe td = raw::pow(theta, Int{twist.delta});
        if (!td.at_level(twist.e))
            throw ConfigError{"theta^delta does not lie in the twist field"};
    }
    return t;
}

nlohmann::json Tower::to_json() const
{
    nlohmann::json j;
    j["modulus"] = to_string(p_);
    j["chain"] = levels_;
    auto st = nlohmann::json::array();
    for (const auto& s : steps_)
    {
        std::string g = s.below == 1 ? "" : "g" + std::to_string(s.below);
        st.push_back({{"from", s.below},
                      {"degree", s.degree},
                      {"c0", to_string(s.c0)},
                      {"generator", s.c1},
                      {"relation", "g" + std::to_string(s.top()) + "^" + std::to_string(s.degree) + " = " +
                                       (s.c1 ? g + (s.c0 == 0 ? "" : (s.c0 > 0 ? " + " : " - ") + to_string(abs(s.c0)))
                                             : to_string(s.c0))}});
    }
    j["steps"] = st;
    if (twist_.delta != 0)
        j["theta"] = {{"element", "g" + std::to_string(top())},
                      {"delta", twist_.delta},
                      {"subfield", twist_.e}};
    return j;
}

std::shared_ptr<const Tower> Tower::from_json(const nlohmann::json& j)
{
    try
    {
        Int p = parse_decimal(j.at("modulus").get<std::string>());
        std::vector<TowerStep> steps;
        for (const auto& s : j.at("steps"))
            steps.push_back({s.at("from").get<unsigned>(), s.at("degree").get<unsigned>(),
                             parse_decimal(s.at("c0").get<std::string>()), s.at("generator").get<bool>()});
        TwistSpec tw;
        if (j.contains("theta"))
            tw = {j["theta"].at("delta").get<unsigned>(), j["theta"].at("subfield").get<unsigned>()};
        auto t = make(std::move(p), std::move(steps), tw);
        if (j.contains("chain") && j["chain"].get<std::vector<unsigned>>() != t->levels())
            throw ConfigError{"tower chain does not match its steps"};
        return t;
    }
    catch (const nlohmann::json::exception& e)
    {
        throw ConfigError{std::string{"malformed tower document: "} + e.what()};
    }
    catch (const UsageError& e)
    {
        throw ConfigError{std::string{"malformed tower document: "} + e.what()};
    }
}

// ---------------------------------------------------------------- Fe

Fe::Fe(const Tower& t, unsigned level) : tower_{&t}, level_{level}, c_(level, Int{0})
{
    if (!t.has_level(level))
        throw UsageError{"level " + std::to_string(level) + " is not on the tower"};
}

Fe Fe::from_int(const Tower& t, const Int& v, unsigned level)
{
    Fe r{t, level};
    r.c_[0] = mod(v, t.p());
    return r;
}

Fe Fe::from_coeffs(const Tower& t, unsigned level, std::vector<Int> c)
{
    if (c.size() != level)
        throw UsageError{"coefficient count does not match level " + std::to_string(level)};
    Fe r{t, level};
    for (auto& x : c)
        x = mod(x, t.p());
    r.c_ = std::move(c);
    return r;
}

Fe Fe::generator(const Tower& t, unsigned level)
{
    if (level == 1)
        throw UsageError{"F_p has no adjoined generator"};
    const auto j = t.step_index(level);
    Fe r{t, level};
    r.c_[t.steps()[j].below] = 1;
    return r;
}

bool Fe::is_zero() const
{
    return std::all_of(c_.begin(), c_.end(), [](const Int& x) { return x == 0; });
}

bool Fe::is_one() const
{
    return !c_.empty() && c_[0] == 1 && std::all_of(c_.begin() + 1, c_.end(), [](const Int& x) { return x == 0; });
}

Fe Fe::lift(unsigned level) const
{
    if (level == level_)
        return *this;
    if (level < level_ || level % level_ != 0)
        throw UsageError{"cannot lift level " + std::to_string(level_) + " to " + std::to_string(level)};
    Fe r{*tower_, level};
    std::copy(c_.begin(), c_.end(), r.c_.begin());
    return r;
}

std::optional<Fe> Fe::at_level(unsigned level) const
{
    if (level >= level_)
        return level == level_ ? std::optional<Fe>{*this} : std::optional<Fe>{lift(level)};
    if (!tower_->has_level(level))
        return std::nullopt;
    for (std::size_t i = level; i < c_.size(); ++i)
        if (c_[i] != 0)
            return std::nullopt;
    Fe r{*tower_, level};
    std::copy(c_.begin(), c_.begin() + level, r.c_.begin());
    return r;
}

Fe Fe::demote() const
{
    for (unsigned l : tower_->levels())
    {
        if (l >= level_)
            break;
        if (auto d = at_level(l))
            return *d;
    }
    return *this;
}

Fe Fe::operator-() const
{
    Fe r{*tower_, level_};
    tower_->neg(level_, c_.data(), r.c_.data());
    return r;
}

namespace
{
void check_same_tower(const Fe& a, const Fe& b)
{
    if (!a.valid() || !b.valid())
        throw UsageError{"operation on an unset field element"};
    if (&a.tower() != &b.tower())
        throw UsageError{"operands belong to different towers"};
}
}  // namespace

Fe operator+(const Fe& a, const Fe& b)
{
    check_same_tower(a, b);
    const unsigned n = std::max(a.level_, b.level_);
    Fe x = a.lift(n);
    const Fe y = b.lift(n);
    a.tower_->add(n, x.c_.data(), y.c_.data(), x.c_.data());
    return x;
}

Fe operator-(const Fe& a, const Fe& b)
{
    check_same_tower(a, b);
    const unsigned n = std::max(a.level_, b.level_);
    Fe x = a.lift(n);
    const Fe y = b.lift(n);
    a.tower_->sub(n, x.c_.data(), y.c_.data(), x.c_.data());
    return x;
}

Fe operator*(const Fe& a, const Fe& b)
{
    check_same_tower(a, b);
    const Fe& big = a.level_ >= b.level_ ? a : b;
    const Fe& small = a.level_ >= b.level_ ? b : a;
    Fe r{*a.tower_, big.level_};
    if (big.level_ == small.level_)
    {
        counter::record(OpKind::M, big.level_);
        a.tower_->mul(big.level_, big.c_.data(), small.c_.data(), r.c_.data());
    }
    else
    {
        counter::record(OpKind::M, small.level_, big.level_ / small.level_);
        a.tower_->mul_sub(big.level_, big.c_.data(), small.level_, small.c_.data(), r.c_.data());
    }
    return r;
}

bool operator==(const Fe& a, const Fe& b)
{
    if (!a.valid() || !b.valid())
        return a.valid() == b.valid();
    if (&a.tower() != &b.tower())
        return false;
    const unsigned n = std::max(a.level_, b.level_);
    return a.lift(n).c_ == b.lift(n).c_;
}

Fe& Fe::operator+=(const Fe& o)
{
    return *this = *this + o;
}

Fe& Fe::operator-=(const Fe& o)
{
    return *this = *this - o;
}

Fe& Fe::operator*=(const Fe& o)
{
    return *this = *this * o;
}

Fe Fe::scaled(const Int& s) const
{
    Fe r{*tower_, level_};
    tower_->scale(level_, c_.data(), mod(s, tower_->p()), r.c_.data());
    return r;
}

std::string Fe::str() const
{
    if (level_ == 1)
        return to_string(c_[0]);
    std::string s = "[";
    for (std::size_t i = 0; i < c_.size(); ++i)
        s += (i ? "," : "") + to_string(c_[i]);
    return s + "]";
}

nlohmann::json Fe::to_json() const
{
    auto a = nlohmann::json::array();
    for (const auto& x : c_)
        a.push_back(to_string(x));
    return a;
}

Fe Fe::from_json(const Tower& t, const nlohmann::json& j)
{
    std::vector<Int> c;
    if (j.is_string())
        c.push_back(parse_decimal(j.get<std::string>()));
    else
        for (const auto& x : j)
            c.push_back(parse_decimal(x.get<std::string>()));
    const auto n = static_cast<unsigned>(c.size());
    if (!t.has_level(n))
        throw ConfigError{"element with " + std::to_string(n) + " coefficients matches no tower level"};
    for (const auto& x : c)
        if (x < 0 || x >= t.p())
            throw ConfigError{"element coefficient out of range"};
    return Fe::from_coeffs(t, n, std::move(c));
}

Fe square(const Fe& a)
{
    Fe r{a.tower(), a.level()};
    counter::record(OpKind::S, a.level());
    a.tower().sqr(a.level(), a.coeffs().data(), r.data());
    return r;
}

Fe inverse(const Fe& a)
{
    Fe r{a.tower(), a.level()};
    counter::record(OpKind::I, a.level());
    if (!a.tower().inv(a.level(), a.coeffs().data(), r.data()))
        throw ZeroInversion{"inversion of zero at level " + std::to_string(a.level())};
    return r;
}

Fe frobenius(const Fe& a, unsigned power)
{
    if (power == 0)
        throw UsageError{"frobenius power must be at least 1"};
    if (a.level() > 1 && power % a.level() != 0)
        counter::record_frob(a.level(), power % a.level());
    Fe r{a.tower(), a.level()};
    a.tower().frob(a.level(), a.coeffs().data(), power, r.data());
    return r;
}

Fe pow(const Fe& a, const Int& e)
{
    if (e == 0)
        return Fe::from_int(a.tower(), 1, a.level());
    const Fe base = e < 0 ? inverse(a) : a;
    const Int ae = abs(e);
    Fe acc = base;
    for (unsigned i = bit_length(ae) - 1; i-- > 0;)
    {
        acc = square(acc);
        if (mpz_tstbit(ae.get_mpz_t(), i))
            acc = acc * base;
    }
    return acc;
}

namespace raw
{
Fe mul(const Fe& a, const Fe& b)
{
    const unsigned n = std::max(a.level(), b.level());
    Fe x = a.lift(n);
    const Fe y = b.lift(n);
    Fe r{a.tower(), n};
    a.tower().mul(n, x.coeffs().data(), y.coeffs().data(), r.data());
    return r;
}

Fe pow(const Fe& a, const Int& e)
{
    Fe base = e < 0 ? raw::inverse(a) : a;
    const Int ae = abs(e);
    Vec acc(a.level(), Int{0});
    acc[0] = 1;
    const unsigned bits = bit_length(ae);
    for (unsigned i = bits; i-- > 0;)
    {
        a.tower().sqr(a.level(), acc.data(), acc.data());
        if (mpz_tstbit(ae.get_mpz_t(), i))
            a.tower().mul(a.level(), acc.data(), base.coeffs().data(), acc.data());
    }
    return Fe::from_coeffs(a.tower(), a.level(), std::move(acc));
}

Fe inverse(const Fe& a)
{
    Fe r{a.tower(), a.level()};
    if (!a.tower().inv(a.level(), a.coeffs().data(), r.data()))
        throw ZeroInversion{"inversion of zero at level " + std::to_string(a.level())};
    return r;
}

Int norm(const Fe& a)
{
    const unsigned n = a.level();
    const Tower& t = a.tower();
    Vec acc(a.coeffs());
    Vec cur(a.coeffs());
    for (unsigned i = 1; i < n; ++i)
    {
        t.frob(n, a.coeffs().data(), i, cur.data());
        t.mul(n, acc.data(), cur.data(), acc.data());
    }
    return acc[0];
}

bool is_power(const Fe& a, unsigned d)
{
    if (a.is_zero())
        return true;
    const Int& p = a.tower().p();
    if ((p - 1) % d != 0)
        throw UsageError{"power test needs d | p-1"};
    Int r;
    const Int nrm = norm(a);
    const Int e = (p - 1) / d;
    mpz_powm(r.get_mpz_t(), nrm.get_mpz_t(), e.get_mpz_t(), p.get_mpz_t());
    return r == 1;
}

Fe random(const Tower& t, unsigned level, Rng& rng)
{
    std::vector<Int> c(level);
    for (auto& x : c)
        x = rng.below(t.p());
    return Fe::from_coeffs(t, level, std::move(c));
}

std::optional<Fe> sqrt(const Fe& a, Rng& rng)
{
    if (a.is_zero())
        return a;
    if (!is_power(a, 2))
        return std::nullopt;
    const Tower& t = a.tower();
    const unsigned n = a.level();
    Int q;
    mpz_pow_ui(q.get_mpz_t(), t.p().get_mpz_t(), n);
    Int odd = q - 1;
    unsigned s = 0;
    while (mpz_even_p(odd.get_mpz_t()))
    {
        odd >>= 1;
        ++s;
    }
    Fe z;
    do
        z = random(t, n, rng);
    while (z.is_zero() || is_power(z, 2));

    Fe c = raw::pow(z, odd);
    Fe tt = raw::pow(a, odd);
    Fe r = raw::pow(a, Int{(odd + 1) / 2});
    unsigned m = s;
    while (!tt.is_one())
    {
        unsigned i = 0;
        Fe x = tt;
        while (!x.is_one())
        {
            x = raw::mul(x, x);
            if (++i == m)
                return std::nullopt;
        }
        Fe b = c;
        for (unsigned k = 0; k + i + 1 < m; ++k)
            b = raw::mul(b, b);
        m = i;
        c = raw::mul(b, b);
        tt = raw::mul(tt, c);
        r = raw::mul(r, b);
    }
    return r;
}
}  // namespace raw

uint64_t digest(const Fe& a, uint64_t seed)
{
    uint64_t h = seed;
    auto mix = [&h](unsigned char byte) {
        h ^= byte;
        h *= 0x100000001b3ULL;
    };
    mix(static_cast<unsigned char>(a.level()));
    for (const auto& x : a.coeffs())
    {
        std::size_t count = 0;
        std::vector<unsigned char> buf((mpz_sizeinbase(x.get_mpz_t(), 2) + 7) / 8 + 1);
        mpz_export(buf.data(), &count, 1, 1, 0, 0, x.get_mpz_t());
        for (std::size_t i = 0; i < count; ++i)
            mix(buf[i]);
        mix(0xff);
    }
    return h;
}
}  // namespace elnet
