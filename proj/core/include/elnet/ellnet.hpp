// elnet: Elliptic-net pairings
// Copyright 2026 The elnet Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <elnet/curves.hpp>
#include <elnet/field.hpp>
#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace elnet
{
struct NetOptions
{
    /// Use W1(u,v) = d^(uv) W(u,v) with d = W(-1,1).
    bool modified = false;
    /// When nonzero, d is demoted to this level if it lies there (k/2 for pairings).
    unsigned half_level = 0;
};

/// Constants of the rank-2 net attached to (curve, P1, P2). W(n,0) values live at
/// P1's level and W(n,1) values at the top level of P2.
class NetContext
{
public:
    static NetContext make(const Curve& c, const Point& p1, const Point& p2, const NetOptions& opt = {});

    Fe a, b;
    Fe x1, y1, x2, y2;
    unsigned level0 = 0, level1 = 0;
    bool modified = false;

    Fe d;                  ///< W(-1,1) of the unmodified net, demoted when possible
    bool d_in_half = false;
    bool w2m1_in_top = false;

    Fe w2, inv_w2;         ///< W(2,0)
    // Constants in this net's own normalisation.
    Fe w11, wm11, w21, w2m1;
    // Inverses; unset when the constant is 1 (no division performed).
    Fe inv_w11, inv_wm11, inv_w21, inv_w2m1;

    std::array<Fe, 9> init0;  ///< W(-3..5, 0)

    /// W(n,0) for |n| <= 4 or n = 5 from the closed forms.
    const Fe& initial0(int n) const { return init0[static_cast<std::size_t>(n + 3)]; }
};

/// Window of the net around `center`. Layout shift 0 holds W(c-3..c+4, 0); shift 1
/// holds W(c-4..c+3, 0). Both hold W(c-1..c+1, 1).
struct NetBlock
{
    Int center;
    int shift = 0;
    std::array<Fe, 8> w0;
    std::array<Fe, 3> w1;

    Int lo() const { return center - 3 - shift; }
    /// W(n,0) for n inside the window; throws UsageError otherwise.
    const Fe& W0(const Int& n) const;
    friend bool operator==(const NetBlock&, const NetBlock&) = default;
    uint64_t digest() const;
};

NetBlock initial_block(const NetContext& ctx, int shift = 0);

/// Named intermediates of one Double or DoubleAdd step.
enum class Slot : uint8_t
{
    U1, U2, U3, U4, U5, U6, U7, U8, U9, U10, U11, U12,
    V1, V2,
    L1, L2, L3, L4, L5, L6, L7, L8, L9,
    X0, X1, X2, X3, X4, X5, X6, X7,
    Y1, Y4,
    T1, T2, T3, T4,
    count
};
inline constexpr std::size_t kSlotCount = static_cast<std::size_t>(Slot::count);

std::string_view slot_name(Slot s);
std::optional<Slot> parse_slot(std::string_view s);
/// Slots read directly by `s`.
std::vector<Slot> slot_deps(Slot s);

enum class StepKind
{
    dbl,
    add
};

std::string_view step_kind_name(StepKind k);
/// Slots forming the output block of a step.
const std::vector<Slot>& step_outputs(StepKind k);
/// Every slot a step computes, in a valid sequential order.
const std::vector<Slot>& step_slots(StepKind k);

using SlotReader = std::function<const Fe&(Slot)>;

/// Computes one slot of the step on block `in` (layout shift 0), reading others through `get`.
Fe compute_slot(Slot s, const NetContext& ctx, const NetBlock& in, const SlotReader& get);
/// Output block from the step's L and T slots.
NetBlock assemble_step(StepKind k, const NetBlock& in, const SlotReader& get);

/// Double (digit 0) or DoubleAdd (digit 1) on a shift-0 block, computed slot by slot.
NetBlock table_step(const NetContext& ctx, const NetBlock& in, StepKind k);
NetBlock double_step(const NetContext& ctx, const NetBlock& in);
NetBlock doubleadd_step(const NetContext& ctx, const NetBlock& in);

/// Block centred at 2c + digit (digit in {-1, 0, 1}) with layout `shift_out`. Any
/// input layout that covers the needed indices is accepted.
NetBlock generic_step(const NetContext& ctx, const NetBlock& in, int digit, int shift_out);

/// Table-shaped steps go through table_step, the rest through generic_step.
NetBlock sequential_step(const NetContext& ctx, const NetBlock& in, int digit, int shift_out);

using StepFn = std::function<NetBlock(const NetContext&, const NetBlock&, int digit, int shift_out)>;

struct TraceRecord
{
    std::size_t index;
    std::string kind;  ///< "double", "add", "sub"
    Int center;
    int shift;
    uint64_t digest;
    nlohmann::json to_json() const;
};

struct NetEvalOptions
{
    StepFn executor;  ///< defaults to sequential_step
    std::function<void(const TraceRecord&)> trace;
};

struct NetResult
{
    Fe w0, w1;  ///< W(m,0), W(m,1) with m = plan.value()
    NetBlock block;
    std::size_t steps = 0, additions = 0, subtractions = 0;
};

/// Walks the signed digits of the plan (the sign flag is ignored).
NetResult net_eval(const NetContext& ctx, const LoopPlan& plan, const NetEvalOptions& opt = {});
NetResult net_eval(const NetContext& ctx, const Int& m, const NetEvalOptions& opt = {});

/// Division polynomials psi_n evaluated at a point.
class Rank1Net
{
public:
    Rank1Net(Curve c, Point s);
    const Fe& psi(const Int& n);
    /// [n]S from psi values; infinity when psi_n = 0.
    Point multiple_point(const Int& n);

private:
    Curve c_;
    Point s_;
    std::map<Int, Fe> memo_;
};

/// Index-by-index evaluation of W(n,0), W(n,1), W(n,-1) straight from the
/// recurrence formulas; used as an oracle. Untallied.
class NaiveNet
{
public:
    NaiveNet(const Curve& c, const Point& p1, const Point& p2);
    const Fe& w0(const Int& n);
    const Fe& w1(const Int& n);
    Fe wm1(const Int& n) { return -w1(Int{-n}); }
    /// W(u, v) for v in {-1, 0, 1}.
    Fe at(const Int& u, int v);

private:
    Fe div(const Fe& a, const Fe& b) const;
    Fe P(const Int& j) { return raw::mul(w0(j), w0(Int{j + 2})); }
    Fe Q(const Int& j) { return raw::mul(w0(j), w0(j)); }
    NetContext ctx_;
    std::map<Int, Fe> m0_, m1_;
};

/// One instance of the four-term recurrence for points of Z^2.
struct NetIndex
{
    Int u;
    int v;
};
/// Evaluates the recurrence for vectors p, q, r, s; the getter returns W at a lattice point.
Fe recurrence_residual(const std::function<Fe(const Int&, int)>& W, const NetIndex& p, const NetIndex& q,
                       const NetIndex& r, const NetIndex& s);

/// Long Weierstrass coefficients rebuilt from a normalised net's W(2,0), W(0,2), W(2,1), W(1,2).
struct LongWeierstrass
{
    Fe a1, a2, a3, a4, a6;
};
LongWeierstrass reconstruct_curve(const Fe& w20, const Fe& w02, const Fe& w21, const Fe& w12);
}  // namespace elnet
