// elnet: Elliptic-net pairings
// Copyright 2026 The elnet Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <elnet/field.hpp>
#include <elnet/numeric.hpp>
#include <json.hpp>
#include <memory>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace elnet
{
enum class Family
{
    bn,
    bls12,
    bls24,
    bls48,
    kss16
};

inline constexpr Family kAllFamilies[] = {Family::bn, Family::bls12, Family::kss16, Family::bls24, Family::bls48};

std::string_view family_name(Family f);
inline std::ostream& operator<<(std::ostream& os, Family f) { return os << family_name(f); }

/// Accepts "bn", "bls12", "bls24", "bls48", "kss16" (case-insensitive); throws UsageError.
Family parse_family(std::string_view s);

/// Polynomial with integer numerator coefficients (low degree first) over a common denominator.
struct RationalPoly
{
    std::vector<long> num;
    long den = 1;

    /// Value at x, or nullopt when the denominator does not divide.
    std::optional<Int> eval(const Int& x) const;
};

struct FamilyParams
{
    Family family;
    unsigned k;      ///< embedding degree
    unsigned delta;  ///< twist degree
    unsigned e;      ///< k / delta
    RationalPoly p, r, t;
    std::vector<unsigned> chain;  ///< tower levels, 1 first
    bool quartic;                 ///< y^2 = x^3 + a x (otherwise y^2 = x^3 + b)
    long default_coeff;           ///< preferred b (or a)
    long loop_c1, loop_c0;        ///< loop scalar = c1 * x + c0
};

const FamilyParams& family_params(Family f);

struct FamilyValues
{
    Int p, r, t;
};

/// Evaluates p, r, t at x and checks integrality, primality and r | p + 1 - t.
/// Throws ConfigError naming the polynomial that failed.
FamilyValues evaluate_family(Family f, const Int& x);

/// Loop scalar for a seed, with the signed plan: power-form seeds keep their signed digits.
LoopPlan loop_plan(Family f, const Seed& seed);

/// A published large-parameter row.
struct ReferenceRow
{
    std::string id;  ///< e.g. "bls24-192"
    Family family;
    unsigned security;
    std::string seed;  ///< power expression
    unsigned printed_r_bits, printed_p_bits;
    unsigned doublings, additions;  ///< loop step counts
};

const std::vector<ReferenceRow>& reference_rows();
const ReferenceRow& reference_row(std::string_view id);
/// First row for the family (the one used when no id is given).
const ReferenceRow& reference_row(Family f);

/// Smallest |x| >= 2 (trying -n before +n) with p(x), r(x) prime, all values integral
/// and exact embedding degree k. `limit` bounds |x|.
std::optional<Int> search_desk_seed(Family f, const Int& limit = Int{1000000});
/// The frozen result of search_desk_seed for each family.
Int desk_seed(Family f);

/// Affine point or infinity.
struct Point
{
    Fe x, y;
    bool inf = true;

    static Point infinity() { return {}; }
    static Point affine(Fe x, Fe y) { return {std::move(x), std::move(y), false}; }
    friend bool operator==(const Point& a, const Point& b);
    nlohmann::json to_json() const;
    static Point from_json(const Tower& t, const nlohmann::json& j);
};

/// y^2 = x^3 + a x + b with coefficients in some tower level.
struct Curve
{
    Fe a, b;

    bool contains(const Point& pt) const;
    Point neg(const Point& pt) const;
    Point add(const Point& p, const Point& q) const;
    Point dbl(const Point& p) const;
    Point mul(const Int& n, const Point& p) const;
    /// Uniform affine point with coordinates in `level`.
    Point random_point(unsigned level, Rng& rng) const;
};

/// A concrete curve, its twist and r-torsion generators.
struct CurveInstance
{
    Family family;
    Seed seed;
    Int p, r, t;
    Int cofactor;      ///< #E(F_p) / r
    Int twist_order;   ///< #E'(F_{p^e})
    std::shared_ptr<const Tower> tower;
    Curve E;           ///< over F_p
    Curve Et;          ///< twist over F_{p^e}
    Fe theta;          ///< top generator: sigma(x, y) = (x theta^2, y theta^3)
    Fe theta2, theta3, theta_inv2, theta_inv3;
    Fe xi;             ///< theta^delta, in F_{p^e}
    Point P;           ///< G1 generator on E(F_p)
    Point Qt;          ///< G2 generator on the twist

    const FamilyParams& params() const { return family_params(family); }
    unsigned k() const { return params().k; }
    unsigned e() const { return params().e; }
    LoopPlan loop() const { return loop_plan(family, seed); }

    /// Twist point to E over F_{p^k}.
    Point twist_map(const Point& pt) const;
    /// E point (any level) to the twist; coordinates stay at the top level.
    Point untwist(const Point& pt) const;

    nlohmann::json to_json() const;
    static CurveInstance from_json(const nlohmann::json& j);
};

struct InstantiateOptions
{
    unsigned long rng_seed = 0xe1e7;
    bool generators = true;
};

/// Builds the tower, curve, twist and generators. Throws ConfigError on failure.
CurveInstance instantiate(Family f, const Seed& seed, const InstantiateOptions& opt = {});

/// Desk-scale instance for the family (cached per process).
const CurveInstance& desk_instance(Family f);

/// Trace of Frobenius over F_{p^n} from t and p.
Int trace_power(const Int& t, const Int& p, unsigned n);
}  // namespace elnet
