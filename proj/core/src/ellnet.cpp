// elnet: Elliptic-net pairings
// Copyright 2026 The elnet Authors.
// SPDX-License-Identifier: Apache-2.0

#include <elnet/ellnet.hpp>
#include <elnet/errors.hpp>
#include <cstdio>

namespace elnet
{
// ---------------------------------------------------------------- context

NetContext NetContext::make(const Curve& c, const Point& p1, const Point& p2, const NetOptions& opt)
{
    Uncounted quiet;
    if (p1.inf || p2.inf)
        throw DegeneracyError{"net points must be affine"};
    NetContext ctx;
    ctx.modified = opt.modified;
    ctx.level0 = std::max({p1.x.level(), p1.y.level(), c.a.level(), c.b.level()});
    ctx.level1 = std::max({ctx.level0, p2.x.level(), p2.y.level()});
    const unsigned l0 = ctx.level0;
    const unsigned l1 = ctx.level1;
    ctx.a = c.a.lift(l0);
    ctx.b = c.b.lift(l0);
    ctx.x1 = p1.x.lift(l0);
    ctx.y1 = p1.y.lift(l0);
    ctx.x2 = p2.x.lift(l1);
    ctx.y2 = p2.y.lift(l1);

    const Fe& A = ctx.a;
    const Fe& B = ctx.b;
    const Fe& x = ctx.x1;
    const Fe& y = ctx.y1;
    const Tower& t = x.tower();

    ctx.w2 = y.scaled(2);
    if (ctx.w2.is_zero())
        throw DegeneracyError{"W(2,0) = 0: the first point has order 2"};
    ctx.inv_w2 = raw::inverse(ctx.w2);

    const Fe x2 = raw::mul(x, x);
    const Fe x3 = raw::mul(x2, x);
    const Fe x4 = raw::mul(x2, x2);
    const Fe A2 = raw::mul(A, A);
    const Fe w3 = x4.scaled(3) + raw::mul(A, x2).scaled(6) + raw::mul(B, x).scaled(12) - A2;
    const Fe inner = raw::mul(x3, x3) + raw::mul(A, x4).scaled(5) + raw::mul(B, x3).scaled(20) -
                     raw::mul(A2, x2).scaled(5) - raw::mul(raw::mul(A, B), x).scaled(4) - raw::mul(B, B).scaled(8) -
                     raw::mul(A2, A);
    const Fe w4 = raw::mul(y.scaled(4), inner);
    const Fe w2c = raw::mul(raw::mul(ctx.w2, ctx.w2), ctx.w2);
    const Fe w5 = raw::mul(w4, w2c) - raw::mul(raw::mul(w3, w3), w3);
    const Fe one0 = Fe::from_int(t, 1, l0);
    const Fe zero0{t, l0};
    ctx.init0 = {-w3, -ctx.w2, -one0, zero0, one0, ctx.w2, w3, w4, w5};

    // Second-row constants.
    const Fe dt = ctx.x1 - ctx.x2;
    if (dt.is_zero())
        throw DegeneracyError{"W(-1,1) = 0: the points share an x-coordinate"};
    ctx.d = dt.demote();
    if (opt.half_level != 0)
    {
        ctx.d_in_half = ctx.d.level() <= opt.half_level && opt.half_level % ctx.d.level() == 0;
        if (ctx.d_in_half)
            ctx.d = ctx.d.lift(opt.half_level);
    }
    const Fe lam = raw::mul(ctx.y2 - ctx.y1, raw::inverse(ctx.x2 - ctx.x1));
    const Fe w21t = ctx.x1.scaled(2) + ctx.x2 - raw::mul(lam, lam);
    const Fe s = ctx.y1 + ctx.y2;
    const Fe w2m1t = raw::mul(s, s) - raw::mul(ctx.x1.scaled(2) + ctx.x2, raw::mul(dt, dt));
    const Fe one1 = Fe::from_int(t, 1, l1);

    if (!ctx.modified)
    {
        ctx.w11 = one1;
        ctx.wm11 = dt.lift(l1);
        ctx.w21 = w21t.lift(l1);
        ctx.w2m1 = w2m1t.lift(l1);
        ctx.inv_wm11 = raw::inverse(ctx.d);
    }
    else
    {
        const Fe d2 = raw::mul(ctx.d, ctx.d);
        ctx.w11 = ctx.d.lift(l1);
        ctx.wm11 = one1;
        ctx.w21 = raw::mul(d2, w21t).lift(l1);
        ctx.w2m1 = raw::mul(raw::inverse(d2), w2m1t).lift(l1);
        ctx.inv_w11 = raw::inverse(ctx.d);
    }
    if (ctx.w2m1.is_zero())
        throw DegeneracyError{"W(2,-1) = 0"};
    ctx.inv_w2m1 = raw::inverse(ctx.w2m1);
    ctx.w2m1_in_top = ctx.w2m1.demote().level() == l1;
    if (!ctx.w21.is_zero())
        ctx.inv_w21 = raw::inverse(ctx.w21);
    return ctx;
}

// ---------------------------------------------------------------- blocks

const Fe& NetBlock::W0(const Int& n) const
{
    const Int off = n - lo();
    if (off < 0 || off > 7)
        throw UsageError{"W(" + to_string(n) + ",0) is outside the block centred at " + to_string(center)};
    return w0[off.get_ui()];
}

uint64_t NetBlock::digest() const
{
    uint64_t h = 0xcbf29ce484222325ULL;
    for (const auto& v : w0)
        h = elnet::digest(v, h);
    for (const auto& v : w1)
        h = elnet::digest(v, h);
    return h;
}

NetBlock initial_block(const NetContext& ctx, int shift)
{
    NetBlock b;
    b.center = 1;
    b.shift = shift;
    const int lo = -2 - shift;
    for (int i = 0; i < 8; ++i)
        b.w0[static_cast<std::size_t>(i)] = ctx.initial0(lo + i);
    b.w1 = {Fe::from_int(ctx.x1.tower(), 1, ctx.level1), ctx.w11, ctx.w21};
    if (ctx.w21.is_zero())
        throw DegeneracyError{"W(2,1) = 0"};
    return b;
}

// ---------------------------------------------------------------- slots

namespace
{
constexpr const char* kSlotNames[] = {"U1", "U2", "U3", "U4", "U5", "U6", "U7", "U8", "U9", "U10",
                                      "U11", "U12", "V1", "V2", "L1", "L2", "L3", "L4", "L5", "L6",
                                      "L7", "L8", "L9", "X0", "X1", "X2", "X3", "X4", "X5", "X6",
                                      "X7", "Y1", "Y4", "T1", "T2", "T3", "T4"};
static_assert(std::size(kSlotNames) == kSlotCount);

Slot slot_at(Slot base, int i)
{
    return static_cast<Slot>(static_cast<int>(base) + i);
}

// P(c+o) = W(c+o)W(c+o+2) for o in [-3, 2].
Slot pslot(int o)
{
    switch (o)
    {
    case -3:
        return Slot::U3;
    case -2:
        return Slot::U1;
    case -1:
        return Slot::U5;
    case 0:
        return Slot::U7;
    case 1:
        return Slot::U9;
    case 2:
        return Slot::U11;
    }
    throw UsageError{"P offset out of range"};
}

// Q(c+o) = W(c+o)^2 for o in [-2, 3].
Slot qslot(int o)
{
    if (o < -2 || o > 3)
        throw UsageError{"Q offset out of range"};
    return slot_at(Slot::U2, 2 * (o + 2));
}

int u_offset(Slot s)
{
    const int i = static_cast<int>(s) - static_cast<int>(Slot::U1) + 1;
    if (i % 2 == 0)
        return i / 2 - 3;  // U2 -> -2, ..., U12 -> 3
    switch (i)
    {
    case 1:
        return -2;
    case 3:
        return -3;
    default:
        return (i - 5) / 2 - 1;  // U5 -> -1, U7 -> 0, U9 -> 1, U11 -> 2
    }
}

struct LTerms
{
    Slot p1, q1, p2, q2;
    bool even;
};

LTerms l_terms(int i)
{
    if (i % 2 == 1)
    {
        const int jo = (i - 3) / 2;
        return {pslot(jo - 1), qslot(jo - 1), pslot(jo - 2), qslot(jo), false};
    }
    const int jo = i / 2 - 2;
    return {pslot(jo), qslot(jo - 1), pslot(jo - 2), qslot(jo + 1), true};
}

struct XTerms
{
    Slot v, u;
};

XTerms x_terms(int i)
{
    switch (i)
    {
    case 0:
        return {Slot::V1, Slot::U4};
    case 1:
        return {Slot::V2, Slot::U1};
    case 2:
        return {Slot::V1, Slot::U6};
    case 3:
        return {Slot::V2, Slot::U5};
    case 4:
        return {Slot::V1, Slot::U8};
    case 5:
        return {Slot::V2, Slot::U7};
    case 6:
        return {Slot::V2, Slot::U9};
    default:
        return {Slot::V1, Slot::U10};
    }
}

bool in_range(Slot s, Slot lo, Slot hi)
{
    return static_cast<int>(s) >= static_cast<int>(lo) && static_cast<int>(s) <= static_cast<int>(hi);
}

Fe times_inverse(const Fe& v, const Fe& inv)
{
    return inv.valid() ? v * inv : v;
}
}  // namespace

std::string_view slot_name(Slot s)
{
    return kSlotNames[static_cast<std::size_t>(s)];
}

std::optional<Slot> parse_slot(std::string_view s)
{
    for (std::size_t i = 0; i < kSlotCount; ++i)
        if (s == kSlotNames[i])
            return static_cast<Slot>(i);
    return std::nullopt;
}

std::vector<Slot> slot_deps(Slot s)
{
    if (in_range(s, Slot::U1, Slot::V2))
        return {};
    if (in_range(s, Slot::L1, Slot::L9))
    {
        const auto t = l_terms(static_cast<int>(s) - static_cast<int>(Slot::L1) + 1);
        return {t.p1, t.q1, t.p2, t.q2};
    }
    if (in_range(s, Slot::X0, Slot::X7))
    {
        const auto t = x_terms(static_cast<int>(s) - static_cast<int>(Slot::X0));
        return {t.v, t.u};
    }
    switch (s)
    {
    case Slot::Y1:
        return {Slot::X0, Slot::X1};
    case Slot::Y4:
        return {Slot::X6, Slot::X7};
    case Slot::T1:
        return {Slot::Y1};
    case Slot::T2:
        return {Slot::X2, Slot::X3};
    case Slot::T3:
        return {Slot::X4, Slot::X5};
    case Slot::T4:
        return {Slot::Y4};
    default:
        return {};
    }
}

std::string_view step_kind_name(StepKind k)
{
    return k == StepKind::dbl ? "double" : "add";
}

const std::vector<Slot>& step_outputs(StepKind k)
{
    using S = Slot;
    static const std::vector<Slot> dbl{S::L1, S::L2, S::L3, S::L4, S::L5, S::L6, S::L7, S::L8, S::T1, S::T2, S::T3};
    static const std::vector<Slot> add{S::L2, S::L3, S::L4, S::L5, S::L6, S::L7, S::L8, S::L9, S::T2, S::T3, S::T4};
    return k == StepKind::dbl ? dbl : add;
}

const std::vector<Slot>& step_slots(StepKind k)
{
    using S = Slot;
    static const std::vector<Slot> dbl{S::U1, S::U2, S::U3, S::U4, S::U5, S::U6, S::U7, S::U8, S::U9, S::U10,
                                       S::U11, S::U12, S::V1, S::V2, S::L1, S::L2, S::L3, S::L4, S::L5, S::L6,
                                       S::L7, S::L8, S::X0, S::X1, S::X2, S::X3, S::X4, S::X5, S::Y1, S::T1,
                                       S::T2, S::T3};
    static const std::vector<Slot> add{S::U1, S::U2, S::U3, S::U4, S::U5, S::U6, S::U7, S::U8, S::U9, S::U10,
                                       S::U11, S::U12, S::V1, S::V2, S::L2, S::L3, S::L4, S::L5, S::L6, S::L7,
                                       S::L8, S::L9, S::X2, S::X3, S::X4, S::X5, S::X6, S::X7, S::T2, S::T3,
                                       S::Y4, S::T4};
    return k == StepKind::dbl ? dbl : add;
}

Fe compute_slot(Slot s, const NetContext& ctx, const NetBlock& in, const SlotReader& get)
{
    if (in.shift != 0)
        throw UsageError{"slot computation needs a shift-0 block"};
    if (in_range(s, Slot::U1, Slot::U12))
    {
        const int i = static_cast<int>(s) - static_cast<int>(Slot::U1) + 1;
        const int o = u_offset(s);
        const Fe& w = in.w0[static_cast<std::size_t>(o + 3)];
        if (i % 2 == 0)
            return square(w);
        return w * in.w0[static_cast<std::size_t>(o + 5)];
    }
    if (s == Slot::V1)
        return in.w1[2] * in.w1[0];
    if (s == Slot::V2)
        return square(in.w1[1]);
    if (in_range(s, Slot::L1, Slot::L9))
    {
        const auto t = l_terms(static_cast<int>(s) - static_cast<int>(Slot::L1) + 1);
        const Fe v = get(t.p1) * get(t.q1) - get(t.p2) * get(t.q2);
        if (!t.even)
            return v;
        ScaleBucket scale;
        return v * ctx.inv_w2;
    }
    if (in_range(s, Slot::X0, Slot::X7))
    {
        const auto t = x_terms(static_cast<int>(s) - static_cast<int>(Slot::X0));
        return get(t.v) * get(t.u);
    }
    switch (s)
    {
    case Slot::Y1:
        return get(Slot::X0) - get(Slot::X1);
    case Slot::Y4:
        return get(Slot::X6) - get(Slot::X7);
    case Slot::T1:
        return times_inverse(get(Slot::Y1), ctx.inv_w11);
    case Slot::T2:
        return get(Slot::X2) - get(Slot::X3);
    case Slot::T3:
        return times_inverse(get(Slot::X4) - get(Slot::X5), ctx.inv_wm11);
    case Slot::T4:
        return get(Slot::Y4) * ctx.inv_w2m1;
    default:
        throw UsageError{"not a computable slot"};
    }
}

NetBlock assemble_step(StepKind k, const NetBlock& in, const SlotReader& get)
{
    NetBlock out;
    out.center = 2 * in.center + (k == StepKind::add ? 1 : 0);
    out.shift = 0;
    const auto& outs = step_outputs(k);
    for (std::size_t i = 0; i < 8; ++i)
        out.w0[i] = get(outs[i]);
    for (std::size_t i = 0; i < 3; ++i)
        out.w1[i] = get(outs[8 + i]);
    return out;
}

NetBlock table_step(const NetContext& ctx, const NetBlock& in, StepKind k)
{
    std::array<Fe, kSlotCount> board;
    const SlotReader get = [&board](Slot s) -> const Fe& {
        const Fe& v = board[static_cast<std::size_t>(s)];
        if (!v.valid())
            throw UsageError{"slot " + std::string{slot_name(s)} + " read before it was computed"};
        return v;
    };
    for (Slot s : step_slots(k))
        board[static_cast<std::size_t>(s)] = compute_slot(s, ctx, in, get);
    return assemble_step(k, in, get);
}

NetBlock double_step(const NetContext& ctx, const NetBlock& in)
{
    return table_step(ctx, in, StepKind::dbl);
}

NetBlock doubleadd_step(const NetContext& ctx, const NetBlock& in)
{
    return table_step(ctx, in, StepKind::add);
}

NetBlock generic_step(const NetContext& ctx, const NetBlock& in, int digit, int shift_out)
{
    if (digit < -1 || digit > 1 || shift_out < 0 || shift_out > 1)
        throw UsageError{"digit must be -1, 0 or 1 and shift 0 or 1"};
    const Int& c = in.center;
    std::map<Int, Fe> P, Q;
    auto getP = [&](const Int& j) -> const Fe& {
        auto it = P.find(j);
        if (it == P.end())
            it = P.emplace(j, in.W0(j) * in.W0(Int{j + 2})).first;
        return it->second;
    };
    auto getQ = [&](const Int& j) -> const Fe& {
        auto it = Q.find(j);
        if (it == Q.end())
            it = Q.emplace(j, square(in.W0(j))).first;
        return it->second;
    };

    NetBlock out;
    out.center = 2 * c + digit;
    out.shift = shift_out;
    const Int lo = out.lo();
    for (int i = 0; i < 8; ++i)
    {
        const Int n = lo + i;
        if (mpz_odd_p(n.get_mpz_t()))
        {
            const Int h = (n + 1) / 2;
            out.w0[static_cast<std::size_t>(i)] =
                getP(Int{h - 1}) * getQ(Int{h - 1}) - getP(Int{h - 2}) * getQ(h);
        }
        else
        {
            const Int h = n / 2;
            const Fe v = getP(h) * getQ(Int{h - 1}) - getP(Int{h - 2}) * getQ(Int{h + 1});
            ScaleBucket scale;
            out.w0[static_cast<std::size_t>(i)] = v * ctx.inv_w2;
        }
    }

    const Fe V1 = in.w1[2] * in.w1[0];
    const Fe V2 = square(in.w1[1]);
    for (int i = 0; i < 3; ++i)
    {
        const int b = digit - 1 + i;
        const Int j = c + b;
        Fe v;
        switch (b)
        {
        case -2:
            if (!ctx.inv_w21.valid())
                throw DegeneracyError{"W(2,1) = 0 blocks the subtraction step"};
            v = (V1 * getQ(j) - V2 * getP(Int{j - 1})) * ctx.inv_w21;
            break;
        case -1:
            v = times_inverse(V1 * getQ(j) - V2 * getP(Int{j - 1}), ctx.inv_w11);
            break;
        case 0:
            v = V1 * getQ(j) - V2 * getP(Int{j - 1});
            break;
        case 1:
            v = times_inverse(V1 * getQ(j) - V2 * getP(Int{j - 1}), ctx.inv_wm11);
            break;
        default:
            v = (V2 * getP(Int{j - 1}) - V1 * getQ(j)) * ctx.inv_w2m1;
            break;
        }
        out.w1[static_cast<std::size_t>(i)] = std::move(v);
    }
    return out;
}

NetBlock sequential_step(const NetContext& ctx, const NetBlock& in, int digit, int shift_out)
{
    if (in.shift == 0 && shift_out == 0 && (digit == 0 || digit == 1))
        return table_step(ctx, in, digit == 0 ? StepKind::dbl : StepKind::add);
    return generic_step(ctx, in, digit, shift_out);
}

// ---------------------------------------------------------------- evaluation

nlohmann::json TraceRecord::to_json() const
{
    char hex[17];
    std::snprintf(hex, sizeof hex, "%016llx", static_cast<unsigned long long>(digest));
    return {{"step", index}, {"kind", kind}, {"center", to_string(center)}, {"shift", shift}, {"digest", hex}};
}

NetResult net_eval(const NetContext& ctx, const LoopPlan& plan, const NetEvalOptions& opt)
{
    const auto& dg = plan.digits;
    if (dg.empty() || dg.front() != 1)
        throw UsageError{"loop plan must start with digit 1"};
    const std::size_t n = dg.size();
    // Block j takes layout 1 when the next nonzero digit after position j is -1.
    std::vector<int> shift(n, 0);
    int next = 0;
    for (std::size_t j = n; j-- > 0;)
    {
        shift[j] = next == -1 ? 1 : 0;
        if (dg[j] != 0)
            next = dg[j];
    }
    const StepFn& exec = opt.executor ? opt.executor : StepFn{sequential_step};
    NetResult res;
    res.block = initial_block(ctx, shift[0]);
    for (std::size_t j = 1; j < n; ++j)
    {
        res.block = exec(ctx, res.block, dg[j], shift[j]);
        ++res.steps;
        if (dg[j] == 1)
            ++res.additions;
        if (dg[j] == -1)
            ++res.subtractions;
        if (opt.trace)
            opt.trace({j, dg[j] == 0 ? "double" : dg[j] == 1 ? "add" : "sub", res.block.center, res.block.shift,
                       res.block.digest()});
    }
    res.w0 = res.block.W0(res.block.center);
    res.w1 = res.block.w1[1];
    return res;
}

NetResult net_eval(const NetContext& ctx, const Int& m, const NetEvalOptions& opt)
{
    if (m < 1)
        throw UsageError{"net_eval needs m >= 1"};
    return net_eval(ctx, LoopPlan::binary(m), opt);
}

// ---------------------------------------------------------------- rank 1

Rank1Net::Rank1Net(Curve c, Point s) : c_{std::move(c)}, s_{std::move(s)}
{
    if (s_.inf)
        throw UsageError{"rank-1 net needs an affine point"};
}

const Fe& Rank1Net::psi(const Int& n)
{
    if (auto it = memo_.find(n); it != memo_.end())
        return it->second;
    Uncounted quiet;
    const unsigned lvl = std::max({s_.x.level(), s_.y.level(), c_.a.level(), c_.b.level()});
    const Fe x = s_.x.lift(lvl);
    const Fe y = s_.y.lift(lvl);
    const Fe A = c_.a.lift(lvl);
    const Fe B = c_.b.lift(lvl);
    const Tower& t = x.tower();
    Fe v;
    if (n < 0)
        v = -psi(Int{-n});
    else if (n == 0)
        v = Fe{t, lvl};
    else if (n == 1)
        v = Fe::from_int(t, 1, lvl);
    else if (n == 2)
        v = y.scaled(2);
    else if (n == 3)
    {
        const Fe x2 = raw::mul(x, x);
        v = raw::mul(x2, x2).scaled(3) + raw::mul(A, x2).scaled(6) + raw::mul(B, x).scaled(12) - raw::mul(A, A);
    }
    else if (n == 4)
    {
        const Fe x2 = raw::mul(x, x);
        const Fe x3 = raw::mul(x2, x);
        const Fe A2 = raw::mul(A, A);
        const Fe inner = raw::mul(x3, x3) + raw::mul(A, raw::mul(x2, x2)).scaled(5) + raw::mul(B, x3).scaled(20) -
                         raw::mul(A2, x2).scaled(5) - raw::mul(raw::mul(A, B), x).scaled(4) -
                         raw::mul(B, B).scaled(8) - raw::mul(A2, A);
        v = raw::mul(y.scaled(4), inner);
    }
    else if (mpz_odd_p(n.get_mpz_t()))
    {
        const Int m = (n - 1) / 2;
        const Fe a = psi(Int{m + 2});
        const Fe b = psi(m);
        const Fe c = psi(Int{m - 1});
        const Fe d = psi(Int{m + 1});
        v = raw::mul(a, raw::mul(raw::mul(b, b), b)) - raw::mul(c, raw::mul(raw::mul(d, d), d));
    }
    else
    {
        const Int m = n / 2;
        const Fe pm = psi(m);
        const Fe a = psi(Int{m + 2});
        const Fe b = psi(Int{m - 1});
        const Fe c = psi(Int{m - 2});
        const Fe d = psi(Int{m + 1});
        const Fe num = raw::mul(pm, raw::mul(a, raw::mul(b, b)) - raw::mul(c, raw::mul(d, d)));
        v = raw::mul(num, raw::inverse(y.scaled(2)));
    }
    return memo_.emplace(n, std::move(v)).first->second;
}

Point Rank1Net::multiple_point(const Int& n)
{
    const Fe pn = psi(n);
    if (pn.is_zero())
        return Point::infinity();
    Uncounted quiet;
    const Fe pm1 = psi(Int{n - 1});
    const Fe pp1 = psi(Int{n + 1});
    const Fe pm2 = psi(Int{n - 2});
    const Fe pp2 = psi(Int{n + 2});
    const Fe inv = raw::inverse(pn);
    const Fe inv2 = raw::mul(inv, inv);
    const Fe x = s_.x - raw::mul(raw::mul(pm1, pp1), inv2);
    const Fe num = raw::mul(raw::mul(pm1, pm1), pp2) - raw::mul(raw::mul(pp1, pp1), pm2);
    const Fe y = raw::mul(num, raw::mul(raw::inverse(s_.y.scaled(4)), raw::mul(inv2, inv)));
    return Point::affine(x, y);
}

// ---------------------------------------------------------------- naive net

NaiveNet::NaiveNet(const Curve& c, const Point& p1, const Point& p2) : ctx_{NetContext::make(c, p1, p2, {})} {}

Fe NaiveNet::div(const Fe& a, const Fe& b) const
{
    return raw::mul(a, raw::inverse(b));
}

const Fe& NaiveNet::w0(const Int& n)
{
    if (auto it = m0_.find(n); it != m0_.end())
        return it->second;
    Uncounted quiet;
    Fe v;
    if (n >= -3 && n <= 5)
        v = ctx_.initial0(static_cast<int>(n.get_si()));
    else if (n < 0)
        v = -w0(Int{-n});
    else if (mpz_odd_p(n.get_mpz_t()))
    {
        const Int i = (n + 1) / 2;
        v = raw::mul(P(Int{i - 1}), Q(Int{i - 1})) - raw::mul(P(Int{i - 2}), Q(i));
    }
    else
    {
        const Int i = n / 2;
        v = div(raw::mul(P(i), Q(Int{i - 1})) - raw::mul(P(Int{i - 2}), Q(Int{i + 1})), ctx_.w2);
    }
    return m0_.emplace(n, std::move(v)).first->second;
}

const Fe& NaiveNet::w1(const Int& n)
{
    if (auto it = m1_.find(n); it != m1_.end())
        return it->second;
    Uncounted quiet;
    const unsigned l1 = ctx_.level1;
    Fe v;
    if (n == -2)
        v = -ctx_.w2m1;
    else if (n == -1)
        v = ctx_.wm11;
    else if (n == 0 || n == 1)
        v = Fe::from_int(ctx_.x1.tower(), 1, l1);
    else if (n == 2)
        v = ctx_.w21;
    else
    {
        const bool odd = mpz_odd_p(n.get_mpz_t());
        const int b = !odd ? 0 : (n > 0 ? 1 : -1);
        const Int c = (n - b) / 2;
        const Fe V1 = raw::mul(w1(Int{c + 1}), w1(Int{c - 1}));
        const Fe& wc = w1(c);
        const Fe V2 = raw::mul(wc, wc);
        v = raw::mul(V1, Q(Int{c + b})) - raw::mul(V2, P(Int{c + b - 1}));
        if (b == 1)
            v = div(v, ctx_.wm11);
    }
    return m1_.emplace(n, v.lift(l1)).first->second;
}

Fe NaiveNet::at(const Int& u, int v)
{
    switch (v)
    {
    case 0:
        return w0(u);
    case 1:
        return w1(u);
    case -1:
        return wm1(u);
    }
    throw UsageError{"NaiveNet covers second coordinates -1, 0, 1 only"};
}

Fe recurrence_residual(const std::function<Fe(const Int&, int)>& W, const NetIndex& p, const NetIndex& q,
                       const NetIndex& r, const NetIndex& s)
{
    Uncounted quiet;
    auto add = [](const NetIndex& a, const NetIndex& b) { return NetIndex{a.u + b.u, a.v + b.v}; };
    auto sub = [](const NetIndex& a, const NetIndex& b) { return NetIndex{a.u - b.u, a.v - b.v}; };
    auto w = [&W](const NetIndex& i) { return W(i.u, i.v); };
    auto term = [&](const NetIndex& a, const NetIndex& b, const NetIndex& c) {
        // W(a+b+s) W(a-b) W(c+s) W(c)
        return raw::mul(raw::mul(w(add(add(a, b), s)), w(sub(a, b))), raw::mul(w(add(c, s)), w(c)));
    };
    return term(p, q, r) + term(q, r, p) + term(r, p, q);
}

LongWeierstrass reconstruct_curve(const Fe& w20, const Fe& w02, const Fe& w21, const Fe& w12)
{
    Uncounted quiet;
    const Fe diff = w21 - w12;
    LongWeierstrass c;
    c.a1 = raw::mul(w20 - w02, raw::inverse(diff));
    c.a2 = w21.scaled(2) - w12;
    c.a3 = w20;
    c.a4 = raw::mul(diff, w21);
    c.a6 = Fe{w20.tower(), w20.level()};
    return c;
}
}  // namespace elnet
