// elnet: Elliptic-net pairings
// Copyright 2026 The elnet Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <elnet/curves.hpp>
#include <elnet/ellnet.hpp>
#include <elnet/op_counter.hpp>
#include <json.hpp>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace elnet
{
/// a M + b I in base-field units.
struct Cost
{
    int64_t m = 0;
    int64_t i = 0;

    Cost& operator+=(const Cost& o)
    {
        m += o.m;
        i += o.i;
        return *this;
    }
    friend Cost operator+(Cost a, const Cost& b) { return a += b; }
    friend Cost operator*(int64_t n, const Cost& c) { return {n * c.m, n * c.i}; }
    friend bool operator==(const Cost&, const Cost&) = default;

    /// "15071M+3I", "9247M".
    std::string str() const;
    /// Inverse of str(); throws ConfigError.
    static Cost parse(std::string_view s);
};

/// Operation at a tower level, e.g. (M, 12) for M_12.
struct CostKey
{
    OpKind kind;
    unsigned level;
    friend auto operator<=>(const CostKey&, const CostKey&) = default;
    std::string str() const;  ///< "M12"
    static CostKey parse(std::string_view s);
};

class CostTable
{
public:
    /// Parses {"prices": {"M2": 3, "I6": {"M": 37, "I": 1}, ...}, "frobenius": [...], ...}.
    static CostTable from_json(const nlohmann::json& j);
    /// The shipped table.
    static const CostTable& builtin();

    /// Throws UnpricedEntry. M_1 = M and I_1 = I are implicit.
    Cost price(const CostKey& k) const;
    bool priced(const CostKey& k) const;
    Cost frobenius(unsigned level, unsigned power) const;

    /// Family extras charged once per pairing (line evaluations and combination).
    struct Extra
    {
        std::string label;
        Cost cost;
        std::map<CostKey, int64_t> terms;
    };
    const std::vector<Extra>& extras(Family f) const;

    struct MillerModel
    {
        std::optional<int64_t> constant;
        int64_t dbl = 0, add = 0;
        unsigned level = 0;
    };
    const MillerModel& miller(Family f) const;

    const std::string& name() const { return name_; }
    nlohmann::json to_json() const;

private:
    std::string name_;
    std::map<CostKey, Cost> prices_;
    std::map<std::pair<unsigned, unsigned>, Cost> frob_;
    std::map<Family, std::vector<Extra>> extras_;
    std::map<Family, MillerModel> miller_;
};

/// Multiset of priced operations plus already-reduced constants.
class CostExpr
{
public:
    CostExpr() = default;
    CostExpr(CostKey k, int64_t n) { add(k, n); }

    void add(CostKey k, int64_t n);
    void add_frob(unsigned level, unsigned power, int64_t n);
    void add_constant(const Cost& c) { constant_ += c; }
    CostExpr& operator+=(const CostExpr& o);
    friend CostExpr operator+(CostExpr a, const CostExpr& b) { return a += b; }
    friend CostExpr operator*(int64_t n, const CostExpr& e);
    friend bool operator==(const CostExpr&, const CostExpr&) = default;

    const std::map<CostKey, int64_t>& terms() const { return terms_; }
    int64_t count(CostKey k) const;
    const Cost& constant() const { return constant_; }

    /// Throws UnpricedEntry naming the first unpriced key.
    Cost reduce(const CostTable& t = CostTable::builtin()) const;
    /// Upper bound where an unpriced S_i is charged as M_i; nullopt if still unpriced.
    std::optional<Cost> bound(const CostTable& t = CostTable::builtin()) const;

    /// Main bucket of a tally, Frobenius maps included.
    static CostExpr from_tally(const Tally& t, Bucket b = Bucket::main);

    std::string str() const;  ///< "19M2+3S2+1M12"
    nlohmann::json to_json() const;

private:
    std::map<CostKey, int64_t> terms_;
    std::map<std::pair<unsigned, unsigned>, int64_t> frob_;
    Cost constant_;
};

/// Levels in which step costs are written.
enum class SymLevel : uint8_t
{
    e,
    half,  ///< k/2
    k
};

/// Coefficient a + b delta.
struct DeltaCoeff
{
    int64_t a = 0, b = 0;
    friend bool operator==(const DeltaCoeff&, const DeltaCoeff&) = default;
};

/// Step cost written over M_e, S_e, M_{k/2}, M_k, S_k with delta-linear coefficients.
class SymCost
{
public:
    void add(OpKind k, SymLevel l, DeltaCoeff c);
    SymCost& operator+=(const SymCost& o);
    friend bool operator==(const SymCost&, const SymCost&) = default;

    CostExpr instantiate(unsigned e, unsigned delta, unsigned k) const;
    /// "(7+2δ)M_e+3S_e+M_k".
    std::string str() const;
    static SymCost parse(std::string_view s);
    bool empty() const { return terms_.empty(); }

private:
    std::map<std::pair<SymLevel, OpKind>, DeltaCoeff> terms_;
};

/// Symbolic price of computing one slot, modified-net convention (T3 is free).
SymCost slot_cost(Slot s);

struct StepCostSpec
{
    unsigned e, delta, k;
    unsigned processors;  ///< 4 or 8
    StepKind kind;

    static StepCostSpec of(Family f, unsigned processors, StepKind kind);
};

/// Longest-path formula of the schedule for (processors, kind).
SymCost step_closed_form(unsigned processors, StepKind kind);
CostExpr step_cost(const StepCostSpec& spec);

/// Sum of slot costs for one sequential step (modified net, scale bucket excluded).
CostExpr sequential_step_cost(unsigned e, unsigned delta, unsigned k, StepKind kind);

struct PairingCostReport
{
    Family family;
    unsigned processors;
    std::size_t doublings, additions;  ///< loop step counts
    CostExpr loop;                     ///< doublings * double + additions * add
    CostExpr extras;
    CostExpr total;
    Cost reduced;
    /// Walk the net actually performs: one DoubleAdd replaces a Double at every nonzero digit.
    Cost actual_walk;
};

/// Totals for a loop plan under the printed convention (every step priced as a double).
PairingCostReport pairing_cost(Family f, const LoopPlan& plan, unsigned processors,
                               const CostTable& t = CostTable::builtin());

CostExpr miller_cost(Family f, const LoopPlan& plan, const CostTable& t = CostTable::builtin());

struct LevelDiff
{
    CostKey key;
    int64_t measured, expected;
};

struct ModelReport
{
    bool match = true;
    std::vector<LevelDiff> diffs;  ///< only mismatching entries
    CostExpr measured;
    CostExpr scale;  ///< W(2,0)^-1 rescalings, always reported
    std::string str() const;
};

ModelReport measured_vs_model(const Tally& measured, const CostExpr& expected);

/// One line of the cost report.
struct CostRow
{
    unsigned security;
    std::string row;  ///< reference row id
    Family family;
    Cost miller, proc4, proc8;
};

std::vector<CostRow> cost_rows(const CostTable& t = CostTable::builtin());

struct ExpectedRow
{
    unsigned security;
    std::string row;
    Cost miller, proc4, proc8;
};
std::vector<ExpectedRow> expected_rows();

struct ExpectedStep
{
    Family family;
    int64_t double4, add4, step8;
};
std::vector<ExpectedStep> expected_steps();

/// Mismatches between cost_rows() and the embedded expected values; empty when all match.
std::vector<std::string> check_cost_rows(const std::vector<CostRow>& rows);
}  // namespace elnet
