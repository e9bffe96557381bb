// elnet: Elliptic-net pairings
// Copyright 2026 The elnet Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <gmpxx.h>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace elnet
{
using Int = mpz_class;

/// Number of bits in |n|; 0 for n == 0.
unsigned bit_length(const Int& n);

/// ceil(log2(n)) for n >= 1.
unsigned ceil_log2(const Int& n);

bool is_probable_prime(const Int& n);

/// Exact integer square root; nullopt if n is not a perfect square.
std::optional<Int> exact_sqrt(const Int& n);

/// Non-negative residue of a mod m.
Int mod(const Int& a, const Int& m);

std::string to_string(const Int& n);

/// Parses a decimal integer with optional sign.
Int parse_decimal(std::string_view s);

/// A signed sum of powers of two, e.g. "2^114+2^101-2^14-1".
struct PowerSum
{
    struct Term
    {
        int sign = 1;
        unsigned exp = 0;
    };
    std::vector<Term> terms;

    Int value() const;

    /// Merges equal exponents until all exponents are distinct; terms sorted high to low.
    PowerSum canonical() const;

    /// c1 * this + c0, expanded term by term and canonicalised.
    PowerSum affine(long c1, long c0) const;

    PowerSum negated() const;

    std::string str() const;

    static std::optional<PowerSum> parse(std::string_view s);
};

/// A seed as given by the user: its value plus the power form when one was written.
struct Seed
{
    Int value;
    std::optional<PowerSum> expr;

    std::string str() const;
};

/// Parses "2^a+2^b-...-1" or a decimal integer.
Seed parse_seed(std::string_view s);

/// Signed digits in {-1,0,1}, most significant first; the leading digit is 1.
struct LoopPlan
{
    std::vector<int8_t> digits;
    bool negative = false;  ///< the loop scalar is -(value())

    Int value() const;  ///< magnitude
    Int signed_value() const;
    std::size_t steps() const { return digits.empty() ? 0 : digits.size() - 1; }
    std::size_t additions() const;
    std::size_t subtractions() const;

    static LoopPlan binary(const Int& m);
    static LoopPlan from_power_sum(const PowerSum& ps);
};

/// Deterministic GMP-backed random source.
class Rng
{
public:
    explicit Rng(unsigned long seed = 0x5eed);
    Int below(const Int& n);  ///< uniform in [0, n)
    Int range(const Int& lo, const Int& hi);  ///< uniform in [lo, hi]
    uint64_t next_u64();

private:
    gmp_randclass state_;
};
}  // namespace elnet
