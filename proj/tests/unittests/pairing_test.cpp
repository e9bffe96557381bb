// elnet: Elliptic-net pairings
// Copyright 2026 The elnet Authors.
// SPDX-License-Identifier: Apache-2.0

#include <elnet/checks.hpp>
#include <elnet/costmodel.hpp>
#include <elnet/curves.hpp>
#include <elnet/errors.hpp>
#include <elnet/pairing.hpp>
#include <gtest/gtest.h>

using namespace elnet;

namespace
{
class PairingFamilies : public ::testing::TestWithParam<Family>
{};

PairingOptions raw_options()
{
    PairingOptions o;
    o.reduce = false;
    return o;
}

Point top(const CurveInstance& c, const Point& pt)
{
    return Point::affine(pt.x.lift(c.k()), pt.y.lift(c.k()));
}
}  // namespace

TEST_P(PairingFamilies, final_exp_basics)
{
    const auto& c = desk_instance(GetParam());
    const Tower& t = *c.tower;
    EXPECT_TRUE(final_exp(c, Fe::from_int(t, 1, c.k())).is_one());
    EXPECT_THROW(final_exp(c, Fe{t, c.k()}), ZeroInversion);
    Rng rng{17};
    for (int i = 0; i < 3; ++i)
    {
        const Fe f = raw::random(t, c.k(), rng);
        const Fe g = final_exp(c, f);
        EXPECT_TRUE(raw::pow(g, c.r).is_one());
        // Proper-subfield factors die.
        EXPECT_EQ(final_exp(c, raw::mul(f, c.xi.lift(c.k()))), g);
        EXPECT_EQ(final_exp(c, raw::mul(f, c.theta2)), g);
        // Independent check against the plain exponent.
        Int e = 1;
        for (unsigned j = 0; j < c.k(); ++j)
            e *= c.p;
        e = (e - 1) / c.r;
        if (c.k() <= 24)
            EXPECT_EQ(raw::pow(f, e), g);
    }
}

TEST_P(PairingFamilies, final_exp_is_uncounted)
{
    const auto& c = desk_instance(GetParam());
    Rng rng{2};
    const Fe f = raw::random(*c.tower, c.k(), rng);
    CountScope scope;
    (void)final_exp(c, f);
    EXPECT_TRUE(scope.tally().empty());
}

TEST_P(PairingFamilies, nondegenerate_and_in_mu_r)
{
    const auto& c = desk_instance(GetParam());
    const PairingOutput out = optimal_ate(c, c.Qt, c.P);
    ASSERT_TRUE(out.reduced);
    EXPECT_FALSE(out.reduced->is_one());
    EXPECT_TRUE(raw::pow(*out.reduced, c.r).is_one());
    EXPECT_EQ(out.family, GetParam());
}

TEST_P(PairingFamilies, two_sided_bilinearity)
{
    const auto& c = desk_instance(GetParam());
    const Fe base = *optimal_ate(c, c.Qt, c.P).reduced;
    Rng rng{33};
    for (int i = 0; i < 3; ++i)
    {
        const Int a = rng.range(Int{1}, Int{c.r - 1});
        const Int b = rng.range(Int{1}, Int{c.r - 1});
        const Fe e = *optimal_ate(c, c.Et.mul(a, c.Qt), c.E.mul(b, c.P)).reduced;
        EXPECT_EQ(e, raw::pow(base, a * b));
    }
}

TEST_P(PairingFamilies, net_equals_miller)
{
    const auto& c = desk_instance(GetParam());
    const Fe net = *optimal_ate(c, c.Qt, c.P).reduced;
    const Fe mil = final_exp(c, miller_optimal_ate(c, c.Qt, c.P));
    EXPECT_EQ(net, mil);
}

TEST_P(PairingFamilies, unmodified_net_same_reduced_value)
{
    const auto& c = desk_instance(GetParam());
    PairingOptions o;
    o.modified = false;
    EXPECT_EQ(*optimal_ate(c, c.Qt, c.P, o).reduced, *optimal_ate(c, c.Qt, c.P).reduced);
}

TEST_P(PairingFamilies, tate_net_equals_miller_tate)
{
    const auto& c = desk_instance(GetParam());
    const Point Q = c.twist_map(c.Qt);
    const Fe a = *tate_net(c, c.P, Q).reduced;
    EXPECT_EQ(a, tate_miller(c, c.P, Q));
    EXPECT_TRUE(raw::pow(a, c.r).is_one());
    EXPECT_FALSE(a.is_one());
}

TEST(pairing, tate_bilinearity)
{
    const auto& c = desk_instance(Family::bls12);
    const Point Q = c.twist_map(c.Qt);
    const Fe base = *tate_net(c, c.P, Q).reduced;
    const Curve Ek = top_curve(c);
    Rng rng{5};
    for (int i = 0; i < 20; ++i)
    {
        const Int a = rng.range(Int{1}, Int{c.r - 1});
        const Int b = rng.range(Int{1}, Int{c.r - 1});
        EXPECT_EQ(*tate_net(c, c.E.mul(a, c.P), Ek.mul(b, Q)).reduced, raw::pow(base, a * b));
    }
}

TEST(pairing, miller_of_one_is_one)
{
    const auto& c = desk_instance(Family::bn);
    const Curve Ek = top_curve(c);
    EXPECT_TRUE(miller(Ek, 1, c.twist_map(c.Qt), top(c, c.P)).is_one());
}

TEST(pairing, miller_divisor_relation)
{
    // f_{a+b} = f_a f_b l_{[a]Q,[b]Q} / v_{[a+b]Q}
    const auto& c = desk_instance(Family::bn);
    const Curve Ek = top_curve(c);
    const Point Q = c.twist_map(c.Qt);
    const Point S = top(c, c.P);
    Uncounted quiet;
    for (auto [a, b] : {std::pair{3L, 5L}, {7L, 2L}, {11L, 11L}})
    {
        const Point aQ = Ek.mul(Int{a}, Q), bQ = Ek.mul(Int{b}, Q), abQ = Ek.mul(Int{a + b}, Q);
        const Fe lhs = raw::mul(miller(Ek, Int{a + b}, Q, S), line_value(Ek, abQ, Ek.neg(abQ), S));
        const Fe rhs = raw::mul(raw::mul(miller(Ek, Int{a}, Q, S), miller(Ek, Int{b}, Q, S)), line_value(Ek, aQ, bQ, S));
        EXPECT_EQ(lhs, rhs) << a << "+" << b;
    }
}

TEST(pairing, bn_line_intermediates)
{
    const auto r = run_check("line-intermediates", Fixture{desk_instance(Family::bn), std::nullopt});
    EXPECT_TRUE(r.pass) << r.detail;
    const auto out = optimal_ate(desk_instance(Family::bn), desk_instance(Family::bn).Qt, desk_instance(Family::bn).P,
                                 raw_options());
    EXPECT_TRUE(out.bn);
    EXPECT_FALSE(out.reduced);
}

TEST(pairing, kss16_line_intermediates)
{
    const auto r = run_check("line-intermediates", Fixture{desk_instance(Family::kss16), std::nullopt});
    EXPECT_TRUE(r.pass) << r.detail;
}

TEST(pairing, kss16_tangent_vanishes_on_its_own_line)
{
    // A point constructed on the tangent at Q: the tangent evaluates to zero there.
    const auto& c = desk_instance(Family::kss16);
    const Curve Ek = top_curve(c);
    const Point Q = c.twist_map(c.Qt);
    const Point twoQ = Ek.dbl(Q);
    const Point onLine = Ek.neg(twoQ);
    EXPECT_TRUE(line_value(Ek, Q, Q, onLine).is_zero());
    EXPECT_FALSE(line_value(Ek, Q, Q, top(c, c.P)).is_zero());
}

TEST(pairing, negative_seed_is_inverted)
{
    // BLS12 desk seed is -2: the raw value is W(2,1)^-1 up to subfield factors.
    const auto& c = desk_instance(Family::bls12);
    ASSERT_TRUE(c.loop().negative);
    const Fe raw_val = optimal_ate(c, c.Qt, c.P, raw_options()).raw;
    const NetContext ctx = NetContext::make(c.Et, c.Qt, c.untwist(c.P), {true, c.k() / 2});
    const NetResult n = net_eval(ctx, Int{2});
    EXPECT_EQ(final_exp(c, raw_val), final_exp(c, raw::inverse(n.w1)));
}

TEST(pairing, twist_constants_are_in_twist_field)
{
    for (Family f : kAllFamilies)
    {
        const auto& c = desk_instance(f);
        const auto tc = twist_constants(c);
        EXPECT_EQ(tc.c2p.level(), c.e());
        EXPECT_EQ(tc.c3p.level(), c.e());
        EXPECT_EQ(tc.c2p.lift(c.k()), raw::pow(c.theta, Int{2 * (c.p - 1)}));
    }
}

TEST(pairing, bls12_full_size_loop_counts)
{
    const auto& row = reference_row("bls12-128");
    const CurveInstance c = instantiate(Family::bls12, parse_seed(row.seed));
    Tally tally;
    PairingOutput out;
    {
        CountScope scope;
        out = optimal_ate(c, c.Qt, c.P, raw_options());
        tally = scope.tally();
    }
    EXPECT_EQ(out.steps, 77u);
    EXPECT_EQ(out.subtractions, 2u);
    EXPECT_EQ(out.additions, 0u);
    EXPECT_EQ(tally.get(OpKind::S, 12), 77u);
    EXPECT_EQ(tally.get(OpKind::I, 12), 1u);
}

INSTANTIATE_TEST_SUITE_P(all, PairingFamilies, ::testing::ValuesIn(kAllFamilies),
                         [](const auto& info) { return std::string{family_name(info.param)}; });
