// elnet: Elliptic-net pairings
// Copyright 2026 The elnet Authors.
// SPDX-License-Identifier: Apache-2.0

#include <elnet/checks.hpp>
#include <elnet/curves.hpp>
#include <elnet/ellnet.hpp>
#include <elnet/errors.hpp>
#include <gtest/gtest.h>

using namespace elnet;

namespace
{
// y^2 = x^3 + 2x + 3 over F_373.
struct Generic
{
    const Tower& t = *desk_instance(Family::bn).tower;
    Curve E{Fe::from_int(t, 2), Fe::from_int(t, 3)};
    Point P1, P2;

    explicit Generic(unsigned long seed = 1)
    {
        Rng rng{seed};
        do
        {
            P1 = E.random_point(1, rng);
            P2 = E.random_point(1, rng);
        } while (P1.x == P2.x || P1.y.is_zero() || E.add(P1, P2).inf || E.mul(4, P1).inf);
    }

    Fe c(long v) const { return Fe::from_int(t, Int{v}); }

    // Division polynomials written out for short Weierstrass curves.
    Fe psi3(const Point& S) const
    {
        const Fe& x = S.x;
        const Fe x2 = x * x;
        return c(3) * x2 * x2 + c(6) * E.a * x2 + c(12) * E.b * x - E.a * E.a;
    }
    Fe psi4(const Point& S) const
    {
        const Fe& x = S.x;
        const Fe x2 = x * x, x3 = x2 * x;
        const Fe& A = E.a;
        const Fe& B = E.b;
        return c(4) * S.y *
               (x3 * x3 + c(5) * A * x2 * x2 + c(20) * B * x3 - c(5) * A * A * x2 - c(4) * A * B * x -
                c(8) * B * B - A * A * A);
    }
};

Fe j_invariant(const LongWeierstrass& w)
{
    const Tower& t = w.a3.tower();
    auto c = [&](long v) { return Fe::from_int(t, Int{v}, w.a3.level()); };
    const Fe b2 = w.a1 * w.a1 + c(4) * w.a2;
    const Fe b4 = c(2) * w.a4 + w.a1 * w.a3;
    const Fe b6 = w.a3 * w.a3 + c(4) * w.a6;
    const Fe b8 = w.a1 * w.a1 * w.a6 + c(4) * w.a2 * w.a6 - w.a1 * w.a3 * w.a4 + w.a2 * w.a3 * w.a3 - w.a4 * w.a4;
    const Fe c4 = b2 * b2 - c(24) * b4;
    const Fe disc = -(b2 * b2 * b8) - c(8) * b4 * b4 * b4 - c(27) * b6 * b6 + c(9) * b2 * b4 * b6;
    return c4 * c4 * c4 * inverse(disc);
}

NetContext desk_context(Family f, bool modified)
{
    const auto& c = desk_instance(f);
    return NetContext::make(c.Et, c.Qt, c.untwist(c.P), {modified, c.k() / 2});
}
}  // namespace

TEST(ellnet, initial_values)
{
    Generic g;
    const NetContext ctx = NetContext::make(g.E, g.P1, g.P2);
    EXPECT_TRUE(ctx.initial0(1).is_one());
    EXPECT_TRUE(ctx.initial0(0).is_zero());
    EXPECT_EQ(ctx.initial0(2), g.c(2) * g.P1.y);
    EXPECT_EQ(ctx.initial0(3), g.psi3(g.P1));
    EXPECT_EQ(ctx.initial0(4), g.psi4(g.P1));
    for (int n = 1; n <= 3; ++n)
        EXPECT_EQ(ctx.initial0(-n), -ctx.initial0(n));
    EXPECT_EQ(ctx.d, g.P1.x - g.P2.x);
    const Fe w2m1 = (g.P1.y + g.P2.y) * (g.P1.y + g.P2.y) -
                    (g.c(2) * g.P1.x + g.P2.x) * (g.P1.x - g.P2.x) * (g.P1.x - g.P2.x);
    EXPECT_EQ(ctx.w2m1, w2m1);
}

TEST(ellnet, rank1_psi_matches_division_polynomials)
{
    Generic g;
    Rank1Net net{g.E, g.P1};
    EXPECT_TRUE(net.psi(1).is_one());
    EXPECT_EQ(net.psi(2), g.c(2) * g.P1.y);
    EXPECT_EQ(net.psi(3), g.psi3(g.P1));
    EXPECT_EQ(net.psi(4), g.psi4(g.P1));
}

TEST(ellnet, printed_cubic_breaks_the_recurrence)
{
    Generic g;
    Rank1Net net{g.E, g.P1};
    // psi_5 = psi_4 psi_2^3 - psi_1 psi_3^3
    const Fe p2 = net.psi(2), p3 = net.psi(3), p4 = net.psi(4);
    EXPECT_EQ(net.psi(5), p4 * p2 * p2 * p2 - p3 * p3 * p3);
    const Fe printed = g.c(3) * g.P1.x * g.P1.x * g.P1.x;
    EXPECT_NE(net.psi(5), p4 * p2 * p2 * p2 - printed * printed * printed);
}

TEST(ellnet, multiple_point_matches_group_law)
{
    Generic g;
    Rank1Net net{g.E, g.P1};
    EXPECT_EQ(net.multiple_point(1), g.P1);
    for (long n = 1; n <= 50; ++n)
        EXPECT_EQ(net.multiple_point(Int{n}), g.E.mul(Int{n}, g.P1)) << n;
}

TEST(ellnet, multiple_point_at_order_is_infinity)
{
    const auto& c = desk_instance(Family::bls12);
    Rank1Net net{c.E, c.P};
    EXPECT_TRUE(net.psi(c.r).is_zero());
    EXPECT_TRUE(net.multiple_point(c.r).inf);
}

TEST(ellnet, double_from_initial_block)
{
    Generic g;
    const NetContext ctx = NetContext::make(g.E, g.P1, g.P2);
    const NetBlock b0 = initial_block(ctx);
    EXPECT_EQ(b0.center, 1);
    const NetBlock b1 = double_step(ctx, b0);
    EXPECT_EQ(b1.center, 2);
    EXPECT_EQ(b1.W0(3), g.psi3(g.P1));
    EXPECT_EQ(b1.W0(4), g.psi4(g.P1));
    const NetBlock b2 = doubleadd_step(ctx, b0);
    EXPECT_EQ(b2.center, 3);
    EXPECT_EQ(b2.W0(3), g.psi3(g.P1));
    EXPECT_EQ(double_step(ctx, b0), b1);
}

TEST(ellnet, walk_matches_naive_recursion)
{
    Generic g;
    for (bool modified : {false, true})
    {
        const NetContext ctx = NetContext::make(g.E, g.P1, g.P2, {modified, 0});
        NaiveNet naive{g.E, g.P1, g.P2};
        for (long m = 1; m <= 64; ++m)
        {
            const NetResult r = net_eval(ctx, Int{m});
            ASSERT_EQ(r.w0, naive.w0(Int{m})) << m;
            const Fe expect = modified ? pow(ctx.d, Int{m}) * naive.w1(Int{m}) : naive.w1(Int{m});
            ASSERT_EQ(r.w1, expect) << m << (modified ? " modified" : "");
        }
    }
}

TEST(ellnet, m2_from_initial_values)
{
    Generic g;
    const NetContext ctx = NetContext::make(g.E, g.P1, g.P2);
    const NetResult r = net_eval(ctx, Int{2});
    EXPECT_EQ(r.w0, ctx.w2);
    EXPECT_EQ(r.w1, ctx.w21);
    EXPECT_EQ(r.steps, 1u);
    EXPECT_THROW(net_eval(ctx, Int{0}), UsageError);
}

TEST(ellnet, antisymmetry)
{
    Generic g;
    NaiveNet net{g.E, g.P1, g.P2};
    for (long u = -15; u <= 15; ++u)
        for (int v : {-1, 0, 1})
            EXPECT_EQ(net.at(Int{-u}, -v), -net.at(Int{u}, v)) << u << "," << v;
}

TEST(ellnet, step_count_law)
{
    Generic g;
    const NetContext ctx = NetContext::make(g.E, g.P1, g.P2);
    Rng rng{21};
    for (int i = 0; i < 20; ++i)
    {
        const Int m = rng.range(Int{2}, Int{1} << 40);
        const LoopPlan plan = LoopPlan::binary(m);
        const auto ones = mpz_popcount(m.get_mpz_t());
        EXPECT_EQ(plan.steps(), bit_length(m) - 1);
        EXPECT_EQ(plan.additions(), ones - 1);
        const NetResult r = net_eval(ctx, m);
        EXPECT_EQ(r.steps, plan.steps());
        EXPECT_EQ(r.additions, plan.additions());
        EXPECT_EQ(r.block.center, m);
    }
}

TEST(ellnet, signed_walk_matches_binary_walk)
{
    Generic g;
    const NetContext ctx = NetContext::make(g.E, g.P1, g.P2);
    const auto ps = PowerSum::parse("2^9-2^4+2^2-1");
    ASSERT_TRUE(ps);
    const LoopPlan plan = LoopPlan::from_power_sum(*ps);
    EXPECT_EQ(plan.value(), 512 - 16 + 4 - 1);
    const NetResult a = net_eval(ctx, plan);
    const NetResult b = net_eval(ctx, plan.value());
    EXPECT_EQ(a.w0, b.w0);
    EXPECT_EQ(a.w1, b.w1);
    EXPECT_EQ(a.steps, 9u);
    EXPECT_EQ(a.subtractions, 2u);
}

TEST(ellnet, table_step_equals_generic_step)
{
    const NetContext ctx = desk_context(Family::bls24, true);
    const auto& c = desk_instance(Family::bls24);
    Rng rng{4};
    for (int i = 0; i < 10; ++i)
    {
        NetBlock in;
        in.center = rng.range(Int{4}, Int{500});
        for (auto& w : in.w0)
            w = raw::random(*c.tower, ctx.level0, rng);
        for (auto& w : in.w1)
            w = raw::random(*c.tower, ctx.level1, rng);
        EXPECT_EQ(table_step(ctx, in, StepKind::dbl), generic_step(ctx, in, 0, 0));
        EXPECT_EQ(table_step(ctx, in, StepKind::add), generic_step(ctx, in, 1, 0));
    }
}

TEST(ellnet, modified_context)
{
    for (Family f : kAllFamilies)
    {
        const NetContext ctx = desk_context(f, true);
        const auto& c = desk_instance(f);
        EXPECT_TRUE(ctx.modified);
        EXPECT_TRUE(ctx.wm11.is_one()) << family_name(f);
        EXPECT_TRUE(ctx.d_in_half) << family_name(f);
        EXPECT_EQ(ctx.d.level(), c.k() / 2) << family_name(f);
        // W1(1,1) = d * W(1,1) lies in F_{p^{k/2}}.
        EXPECT_TRUE(ctx.w11.at_level(c.k() / 2).has_value()) << family_name(f);
    }
}

TEST(ellnet, modified_rows_agree_on_v0)
{
    const NetContext plain = desk_context(Family::bn, false);
    const NetContext mod = desk_context(Family::bn, true);
    for (long m : {5L, 17L, 40L})
        EXPECT_EQ(net_eval(plain, Int{m}).w0, net_eval(mod, Int{m}).w0);
}

TEST(ellnet, curve_reconstruction)
{
    Generic g;
    NaiveNet net{g.E, g.P1, g.P2};
    NaiveNet swapped{g.E, g.P2, g.P1};
    const LongWeierstrass w = reconstruct_curve(net.w0(2), swapped.w0(2), net.w1(2), swapped.w1(2));
    EXPECT_EQ(w.a3, net.w0(2));
    EXPECT_TRUE(w.a6.is_zero());
    // Same j-invariant as y^2 = x^3 + 2x + 3.
    const Fe a3 = g.E.a * g.E.a * g.E.a;
    const Fe jE = g.c(1728) * g.c(4) * a3 * inverse(g.c(4) * a3 + g.c(27) * g.E.b * g.E.b);
    EXPECT_EQ(j_invariant(w), jE);
    // psi_3 at (0, 0) on the long form is b8.
    const Fe b8 = w.a2 * w.a3 * w.a3 - w.a1 * w.a3 * w.a4 - w.a4 * w.a4;
    EXPECT_EQ(b8, net.w0(3));
}

TEST(ellnet, slot_names_round_trip)
{
    for (std::size_t i = 0; i < kSlotCount; ++i)
    {
        const auto s = static_cast<Slot>(i);
        EXPECT_EQ(parse_slot(slot_name(s)), s);
    }
    EXPECT_FALSE(parse_slot("Z9"));
    EXPECT_EQ(step_outputs(StepKind::dbl).size(), 11u);
    EXPECT_EQ(step_outputs(StepKind::add).size(), 11u);
}

TEST(ellnet, degenerate_pair_rejected)
{
    Generic g;
    EXPECT_ANY_THROW(NetContext::make(g.E, g.P1, g.P1));
    EXPECT_ANY_THROW(NetContext::make(g.E, g.P1, g.E.neg(g.P1)));
}

TEST(ellnet, desk_invariants_bn_bls12)
{
    CheckOptions o;
    for (Family f : {Family::bn, Family::bls12})
    {
        const Fixture fx{desk_instance(f), std::nullopt};
        for (auto name : {"recurrence", "modified-recurrence", "division-polynomial", "twist-transport"})
        {
            const auto r = run_check(name, fx, o);
            EXPECT_TRUE(r.pass) << family_name(f) << " " << name << ": " << r.detail;
        }
    }
}
