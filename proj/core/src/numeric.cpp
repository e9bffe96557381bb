// elnet: Elliptic-net pairings
// Copyright 2026 The elnet Authors.
// SPDX-License-Identifier: Apache-2.0

#include <elnet/errors.hpp>
#include <elnet/numeric.hpp>
#include <algorithm>
#include <cctype>
#include <map>

namespace elnet
{
unsigned bit_length(const Int& n)
{
    if (n == 0)
        return 0;
    return static_cast<unsigned>(mpz_sizeinbase(n.get_mpz_t(), 2));
}

unsigned ceil_log2(const Int& n)
{
    if (n < 1)
        throw UsageError{"ceil_log2 of non-positive value"};
    return bit_length(Int{n - 1});
}

bool is_probable_prime(const Int& n)
{
    return mpz_probab_prime_p(n.get_mpz_t(), 40) != 0;
}

std::optional<Int> exact_sqrt(const Int& n)
{
    if (n < 0)
        return std::nullopt;
    Int s;
    mpz_sqrt(s.get_mpz_t(), n.get_mpz_t());
    if (s * s != n)
        return std::nullopt;
    return s;
}

Int mod(const Int& a, const Int& m)
{
    Int r;
    mpz_mod(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    return r;
}

std::string to_string(const Int& n)
{
    return n.get_str(10);
}

Int parse_decimal(std::string_view s)
{
    std::string t;
    for (char ch : s)
        if (!std::isspace(static_cast<unsigned char>(ch)))
            t.push_back(ch);
    if (t.empty())
        throw UsageError{"empty integer"};
    std::size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0;
    if (i == t.size())
        throw UsageError{"malformed integer '" + std::string{s} + "'"};
    for (std::size_t j = i; j < t.size(); ++j)
        if (!std::isdigit(static_cast<unsigned char>(t[j])))
            throw UsageError{"malformed integer '" + std::string{s} + "'"};
    Int v{t[0] == '+' ? t.substr(1) : t, 10};
    return v;
}

Int PowerSum::value() const
{
    Int v = 0;
    for (const auto& t : terms)
    {
        Int p;
        mpz_ui_pow_ui(p.get_mpz_t(), 2, t.exp);
        v += t.sign * p;
    }
    return v;
}

namespace
{
PowerSum from_counts(std::map<unsigned, long> counts)
{
    // Carry until every exponent holds -1, 0 or 1.
    for (auto it = counts.begin(); it != counts.end(); ++it)
    {
        const long c = it->second;
        if (c >= 2 || c <= -2)
        {
            counts[it->first + 1] += c / 2;
            it->second = c % 2;
        }
    }
    PowerSum out;
    for (auto it = counts.rbegin(); it != counts.rend(); ++it)
        if (it->second != 0)
            out.terms.push_back({static_cast<int>(it->second), it->first});
    return out;
}
}  // namespace

PowerSum PowerSum::canonical() const
{
    std::map<unsigned, long> counts;
    for (const auto& t : terms)
        counts[t.exp] += t.sign;
    return from_counts(std::move(counts));
}

PowerSum PowerSum::affine(long c1, long c0) const
{
    std::map<unsigned, long> counts;
    const unsigned long a1 = static_cast<unsigned long>(c1 < 0 ? -c1 : c1);
    const int s1 = c1 < 0 ? -1 : 1;
    for (const auto& t : terms)
        for (unsigned j = 0; j < 64; ++j)
            if ((a1 >> j) & 1u)
                counts[t.exp + j] += s1 * t.sign;
    const unsigned long a0 = static_cast<unsigned long>(c0 < 0 ? -c0 : c0);
    const int s0 = c0 < 0 ? -1 : 1;
    for (unsigned j = 0; j < 64; ++j)
        if ((a0 >> j) & 1u)
            counts[j] += s0;
    return from_counts(std::move(counts));
}

PowerSum PowerSum::negated() const
{
    PowerSum out = *this;
    for (auto& t : out.terms)
        t.sign = -t.sign;
    return out;
}

std::string PowerSum::str() const
{
    if (terms.empty())
        return "0";
    std::string s;
    for (std::size_t i = 0; i < terms.size(); ++i)
    {
        const auto& t = terms[i];
        if (t.sign < 0)
            s += '-';
        else if (i != 0)
            s += '+';
        s += t.exp == 0 ? std::string{"1"} : "2^" + std::to_string(t.exp);
    }
    return s;
}

std::optional<PowerSum> PowerSum::parse(std::string_view s)
{
    std::string t;
    for (char ch : s)
        if (!std::isspace(static_cast<unsigned char>(ch)))
            t.push_back(ch);
    if (t.empty())
        return std::nullopt;
    PowerSum out;
    std::size_t i = 0;
    while (i < t.size())
    {
        int sign = 1;
        if (t[i] == '+' || t[i] == '-')
        {
            sign = t[i] == '-' ? -1 : 1;
            ++i;
        }
        else if (i != 0)
            return std::nullopt;
        std::size_t j = i;
        while (j < t.size() && t[j] != '+' && t[j] != '-')
            ++j;
        const std::string term = t.substr(i, j - i);
        if (term == "1")
            out.terms.push_back({sign, 0});
        else if (term.size() > 2 && term[0] == '2' && term[1] == '^')
        {
            const std::string e = term.substr(2);
            if (e.empty() || e.size() > 6 ||
                !std::all_of(e.begin(), e.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
                return std::nullopt;
            out.terms.push_back({sign, static_cast<unsigned>(std::stoul(e))});
        }
        else
            return std::nullopt;
        i = j;
    }
    return out;
}

std::string Seed::str() const
{
    return expr ? expr->str() : to_string(value);
}

Seed parse_seed(std::string_view s)
{
    if (s.find('^') != std::string_view::npos)
    {
        auto ps = PowerSum::parse(s);
        if (!ps)
            throw UsageError{"malformed power expression '" + std::string{s} + "'"};
        return Seed{ps->value(), *ps};
    }
    return Seed{parse_decimal(s), std::nullopt};
}

Int LoopPlan::value() const
{
    Int v = 0;
    for (auto d : digits)
        v = 2 * v + d;
    return v;
}

Int LoopPlan::signed_value() const
{
    return negative ? Int{-value()} : value();
}

std::size_t LoopPlan::additions() const
{
    if (digits.empty())
        return 0;
    return static_cast<std::size_t>(std::count_if(digits.begin() + 1, digits.end(), [](int8_t d) { return d != 0; }));
}

std::size_t LoopPlan::subtractions() const
{
    return static_cast<std::size_t>(std::count(digits.begin(), digits.end(), int8_t{-1}));
}

LoopPlan LoopPlan::binary(const Int& m)
{
    if (m == 0)
        throw UsageError{"loop scalar must be nonzero"};
    LoopPlan plan;
    plan.negative = m < 0;
    const Int a = abs(m);
    const unsigned n = bit_length(a);
    for (unsigned i = n; i-- > 0;)
        plan.digits.push_back(static_cast<int8_t>(mpz_tstbit(a.get_mpz_t(), i)));
    return plan;
}

LoopPlan LoopPlan::from_power_sum(const PowerSum& ps)
{
    PowerSum c = ps.canonical();
    if (c.terms.empty())
        throw UsageError{"loop scalar must be nonzero"};
    LoopPlan plan;
    if (c.terms.front().sign < 0)
    {
        c = c.negated();
        plan.negative = true;
    }
    const unsigned top = c.terms.front().exp;
    plan.digits.assign(top + 1, 0);
    for (const auto& t : c.terms)
        plan.digits[top - t.exp] = static_cast<int8_t>(t.sign);
    return plan;
}

Rng::Rng(unsigned long seed) : state_{gmp_randinit_mt}
{
    state_.seed(seed);
}

Int Rng::below(const Int& n)
{
    if (n <= 0)
        throw UsageError{"Rng::below requires a positive bound"};
    return state_.get_z_range(n);
}

Int Rng::range(const Int& lo, const Int& hi)
{
    return lo + below(Int{hi - lo + 1});
}

uint64_t Rng::next_u64()
{
    const Int v = state_.get_z_bits(64);
    uint64_t out = 0;
    mpz_export(&out, nullptr, -1, sizeof(out), 0, 0, v.get_mpz_t());
    return out;
}
}  // namespace elnet
