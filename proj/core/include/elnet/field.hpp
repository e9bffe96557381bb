// elnet: Elliptic-net pairings
// Copyright 2026 The elnet Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <elnet/numeric.hpp>
#include <elnet/op_counter.hpp>
#include <json.hpp>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace elnet
{
/// One step F_{p^below} -> F_{p^(below*degree)} adjoining g with g^degree = gamma,
/// where gamma = c0 + (c1 ? g_below : 0). At below == 1 only the constant is allowed.
struct TowerStep
{
    unsigned below = 1;
    unsigned degree = 2;
    Int c0 = 0;
    bool c1 = false;

    unsigned top() const { return below * degree; }
    friend bool operator==(const TowerStep&, const TowerStep&) = default;
};

/// Twist generator description: theta is the generator of the top level and
/// theta^delta must land in F_{p^e}.
struct TwistSpec
{
    unsigned delta = 0;
    unsigned e = 0;
};

class Fe;

/// A prime field and its extension tower. Elements store coefficients flat: an element
/// of level n = m*b is b consecutive level-m chunks, so subfields sit in the low chunk.
class Tower
{
public:
    /// Validates p, the steps (each a genuine irreducible binomial) and the twist spec.
    static std::shared_ptr<const Tower> make(Int p, std::vector<TowerStep> steps, TwistSpec twist = {});

    const Int& p() const { return p_; }
    unsigned top() const { return levels_.back(); }
    const std::vector<unsigned>& levels() const { return levels_; }
    bool has_level(unsigned n) const;
    const std::vector<TowerStep>& steps() const { return steps_; }
    const TwistSpec& twist() const { return twist_; }

    nlohmann::json to_json() const;
    static std::shared_ptr<const Tower> from_json(const nlohmann::json& j);

    // Raw coefficient arithmetic; no counting. `n` is the level.
    void add(unsigned n, const Int* a, const Int* b, Int* o) const;
    void sub(unsigned n, const Int* a, const Int* b, Int* o) const;
    void neg(unsigned n, const Int* a, Int* o) const;
    void mul(unsigned n, const Int* a, const Int* b, Int* o) const;
    void sqr(unsigned n, const Int* a, Int* o) const;
    /// Product of a level-n element with a level-m element (m divides n, m on the chain).
    void mul_sub(unsigned n, const Int* a, unsigned m, const Int* b, Int* o) const;
    bool inv(unsigned n, const Int* a, Int* o) const;
    void frob(unsigned n, const Int* a, unsigned power, Int* o) const;
    void scale(unsigned n, const Int* a, const Int& s, Int* o) const;

    /// Index of the step whose top is level n.
    std::size_t step_index(unsigned n) const;

private:
    Tower() = default;
    void reduce(Int& x) const;
    void mul_gamma(std::size_t j, const Int* a, Int* o) const;
    void mul_gen(unsigned n, const Int* a, Int* o) const;
    void pow_raw(unsigned n, const Int* a, const Int& e, Int* o) const;
    void build_frobenius();

    Int p_;
    std::vector<TowerStep> steps_;
    std::vector<unsigned> levels_;
    TwistSpec twist_;
    // kappa_[j][power][i]: coefficients (level steps_[j].below) of g_j^(i*(p^power-1)).
    std::vector<std::vector<std::vector<std::vector<Int>>>> kappa_;
    std::vector<std::vector<std::vector<bool>>> kappa_one_;
};

/// An element of some level of a tower. Values are immutable in spirit: arithmetic
/// returns new elements. The tower must outlive every element built on it.
class Fe
{
public:
    Fe() = default;
    Fe(const Tower& t, unsigned level);

    static Fe from_int(const Tower& t, const Int& v, unsigned level = 1);
    static Fe from_coeffs(const Tower& t, unsigned level, std::vector<Int> c);
    /// The generator adjoined at `level` (level > 1).
    static Fe generator(const Tower& t, unsigned level);

    bool valid() const { return tower_ != nullptr; }
    const Tower& tower() const { return *tower_; }
    unsigned level() const { return level_; }
    const std::vector<Int>& coeffs() const { return c_; }
    /// Direct coefficient access for raw kernels; values must stay reduced.
    Int* data() { return c_.data(); }

    bool is_zero() const;
    bool is_one() const;

    /// Same value viewed at a larger level.
    Fe lift(unsigned level) const;
    /// Same value at the smallest chain level containing it.
    Fe demote() const;
    /// Same value at `level` when it lies in that subfield.
    std::optional<Fe> at_level(unsigned level) const;

    Fe operator-() const;
    Fe& operator+=(const Fe& o);
    Fe& operator-=(const Fe& o);
    Fe& operator*=(const Fe& o);

    /// Multiplication by an integer constant; not tallied.
    Fe scaled(const Int& s) const;

    friend Fe operator+(const Fe& a, const Fe& b);
    friend Fe operator-(const Fe& a, const Fe& b);
    /// Tallies one M at the common level, or (L/m) M_m when one operand lives in F_{p^m}.
    friend Fe operator*(const Fe& a, const Fe& b);
    friend bool operator==(const Fe& a, const Fe& b);

    std::string str() const;
    nlohmann::json to_json() const;
    static Fe from_json(const Tower& t, const nlohmann::json& j);

private:
    const Tower* tower_ = nullptr;
    unsigned level_ = 0;
    std::vector<Int> c_;
};

/// Tallies one S at the element's level.
Fe square(const Fe& a);
/// Tallies one I at the element's level; throws ZeroInversion on zero.
Fe inverse(const Fe& a);
/// a^(p^power); tallies F(level, power).
Fe frobenius(const Fe& a, unsigned power);
/// Square-and-multiply through the tallied operations. Negative exponents invert first.
Fe pow(const Fe& a, const Int& e);

/// Raw (untallied) helpers used by setup code and tests.
namespace raw
{
Fe mul(const Fe& a, const Fe& b);
Fe pow(const Fe& a, const Int& e);
Fe inverse(const Fe& a);
/// Norm down to F_p as the product of all Frobenius conjugates.
Int norm(const Fe& a);
/// True when a is a d-th power in its own level (d | p - 1 required).
bool is_power(const Fe& a, unsigned d);
std::optional<Fe> sqrt(const Fe& a, Rng& rng);
Fe random(const Tower& t, unsigned level, Rng& rng);
}  // namespace raw

/// 64-bit FNV-1a digest over canonical coefficients.
uint64_t digest(const Fe& a, uint64_t seed = 0xcbf29ce484222325ULL);
}  // namespace elnet
