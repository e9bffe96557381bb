// elnet: Elliptic-net pairings
// Copyright 2026 The elnet Authors.
// SPDX-License-Identifier: Apache-2.0

#include <elnet/costmodel.hpp>
#include <elnet/curves.hpp>
#include <elnet/ellnet.hpp>
#include <elnet/errors.hpp>
#include <gtest/gtest.h>
#include <map>

using namespace elnet;

namespace
{
Cost M(int64_t m, int64_t i = 0)
{
    return {m, i};
}

CostKey key(const char* s)
{
    return CostKey::parse(s);
}

const std::map<std::string, std::array<Cost, 3>> kTables = {
    {"bn-128", {M(12068), M(15071, 3), M(11521, 3)}},   {"bls12-128", {M(7708), M(9247), M(6952)}},
    {"kss16-128", {M(7534), M(9637, 2), M(6922, 2)}},   {"bls24-192", {M(19474), M(20727), M(15576)}},
    {"bls24-256", {M(35360), M(37224), M(27984)}},      {"bls48-256", {M(34778), M(36909), M(27720)}},
};
}  // namespace

TEST(costmodel, listed_prices)
{
    const auto& t = CostTable::builtin();
    const std::vector<std::pair<const char*, int64_t>> listed = {
        {"M2", 3},  {"S2", 2},   {"M3", 6},   {"S3", 5},   {"M4", 9},   {"S4", 6},    {"M6", 18},
        {"M8", 27}, {"S8", 18},  {"M9", 36},  {"S9", 25},  {"M16", 81}, {"S16", 54},  {"M18", 108},
        {"S18", 55}, {"M24", 162}, {"S24", 108}, {"M48", 486}, {"S48", 324}, {"M1", 1},
    };
    for (const auto& [k, m] : listed)
        EXPECT_EQ(t.price(key(k)), M(m)) << k;
    EXPECT_EQ(t.price(key("I6")), M(37, 1));
    EXPECT_EQ(t.price(key("I1")), M(0, 1));
    EXPECT_EQ(t.frobenius(12, 1), M(10));
    EXPECT_EQ(t.frobenius(12, 2), M(15));
    EXPECT_EQ(t.frobenius(16, 1), M(15));
    EXPECT_EQ(t.frobenius(16, 3), M(15));
}

TEST(costmodel, m12_back_solved_consistently)
{
    const auto& t = CostTable::builtin();
    // 117 = 19 M_2 + 3 S_2 + M_12
    EXPECT_EQ(117 - 19 * 3 - 3 * 2, t.price(key("M12")).m);
    // 14286 + (100 + I) + (577 + 2I) + 2 M_12 = 15071 + 3I
    EXPECT_EQ(M(14286) + M(100, 1) + M(577, 2) + 2 * t.price(key("M12")), M(15071, 3));
}

TEST(costmodel, unpriced_entries_fail_loudly)
{
    const auto& t = CostTable::builtin();
    EXPECT_FALSE(t.priced(key("S12")));
    EXPECT_FALSE(t.priced(key("S6")));
    try
    {
        (void)CostExpr{key("S12"), 1}.reduce();
        FAIL() << "S12 reduced";
    }
    catch (const UnpricedEntry& e)
    {
        EXPECT_EQ(e.name, "S12");
    }
    const auto b = CostExpr{key("S12"), 2}.bound();
    ASSERT_TRUE(b);
    EXPECT_EQ(*b, M(108));
}

TEST(costmodel, cost_strings_round_trip)
{
    for (const char* s : {"15071M+3I", "9247M", "0M", "37M+1I"})
        EXPECT_EQ(Cost::parse(s).str(), Cost::parse(Cost::parse(s).str()).str()) << s;
    EXPECT_EQ(Cost::parse("15071M+3I"), M(15071, 3));
    EXPECT_EQ(M(9247).str(), "9247M");
    EXPECT_EQ(M(15071, 3).str(), "15071M+3I");
    EXPECT_THROW(Cost::parse("12X"), ConfigError);
}

TEST(costmodel, closed_forms_parse_and_print)
{
    const std::map<std::pair<unsigned, StepKind>, std::string> forms = {
        {{4, StepKind::dbl}, "(7+2δ)M_e+3S_e+M_k"},
        {{4, StepKind::add}, "(7+2δ)M_e+4S_e+M_k"},
        {{8, StepKind::dbl}, "(4+δ)M_e+2S_e+M_k"},
        {{8, StepKind::add}, "(4+δ)M_e+2S_e+M_k"},
    };
    for (const auto& [k, s] : forms)
    {
        EXPECT_EQ(step_closed_form(k.first, k.second), SymCost::parse(s)) << s;
        EXPECT_EQ(SymCost::parse(s).str(), s);
    }
    EXPECT_THROW(step_closed_form(6, StepKind::dbl), UsageError);
}

TEST(costmodel, step_costs)
{
    struct Row
    {
        Family f;
        int64_t d4, a4, s8;
    };
    for (const Row& r : {Row{Family::bn, 117, 119, 88}, Row{Family::bls12, 117, 119, 88},
                         Row{Family::kss16, 234, 240, 165}, Row{Family::bls24, 351, 357, 264},
                         Row{Family::bls48, 1053, 1071, 792}})
    {
        EXPECT_EQ(step_cost(StepCostSpec::of(r.f, 4, StepKind::dbl)).reduce(), M(r.d4)) << family_name(r.f);
        EXPECT_EQ(step_cost(StepCostSpec::of(r.f, 4, StepKind::add)).reduce(), M(r.a4)) << family_name(r.f);
        EXPECT_EQ(step_cost(StepCostSpec::of(r.f, 8, StepKind::dbl)).reduce(), M(r.s8)) << family_name(r.f);
        EXPECT_EQ(step_cost(StepCostSpec::of(r.f, 8, StepKind::add)).reduce(), M(r.s8)) << family_name(r.f);
    }
}

TEST(costmodel, bn_doubling_expression)
{
    const CostExpr e = step_cost(StepCostSpec::of(Family::bn, 4, StepKind::dbl));
    EXPECT_EQ(e.count(key("M2")), 19);
    EXPECT_EQ(e.count(key("S2")), 3);
    EXPECT_EQ(e.count(key("M12")), 1);
    const CostExpr k = step_cost(StepCostSpec::of(Family::kss16, 4, StepKind::dbl));
    EXPECT_EQ(k.count(key("M4")), 15);
    EXPECT_EQ(k.count(key("S4")), 3);
    EXPECT_EQ(k.count(key("M16")), 1);
}

TEST(costmodel, loop_conventions)
{
    const auto bn = pairing_cost(Family::bn, loop_plan(Family::bn, parse_seed("2^114+2^101-2^14-1")), 4);
    EXPECT_EQ(bn.doublings, 116u);
    EXPECT_EQ(bn.additions, 6u);
    EXPECT_EQ(bn.loop.reduce(), M(14286));
    EXPECT_EQ(bn.reduced, M(15071, 3));
    const auto bn8 = pairing_cost(Family::bn, loop_plan(Family::bn, parse_seed("2^114+2^101-2^14-1")), 8);
    EXPECT_EQ(bn8.loop.reduce(), M(10736));
    const auto kss = pairing_cost(Family::kss16, loop_plan(Family::kss16, parse_seed("2^35-2^32-2^18+2^8+1")), 4);
    EXPECT_EQ(kss.loop.reduce(), M(9150));
}

TEST(costmodel, miller_costs)
{
    const auto b192 = loop_plan(Family::bls24, parse_seed("-2^56-2^43+2^9-2^6"));
    // 56(68) + 55 S_24 + 3(110) + 58 M_24
    EXPECT_EQ(miller_cost(Family::bls24, b192).reduce(), M(56 * 68 + 55 * 108 + 3 * 110 + 58 * 162));
    EXPECT_EQ(miller_cost(Family::bls24, b192).reduce(), M(19474));
    const auto b256 = loop_plan(Family::bls24, parse_seed("-2^103-2^101+2^68+2^50"));
    EXPECT_EQ(miller_cost(Family::bls24, b256).reduce(), M(103 * 68 + 102 * 108 + 3 * 110 + 105 * 162));
    EXPECT_EQ(miller_cost(Family::bls24, b256).reduce(), M(35360));
}

TEST(costmodel, tables_reproduced)
{
    const auto rows = cost_rows();
    ASSERT_EQ(rows.size(), kTables.size());
    for (const auto& r : rows)
    {
        const auto& e = kTables.at(r.row);
        EXPECT_EQ(r.miller, e[0]) << r.row;
        EXPECT_EQ(r.proc4, e[1]) << r.row;
        EXPECT_EQ(r.proc8, e[2]) << r.row;
    }
    EXPECT_TRUE(check_cost_rows(rows).empty());
}

TEST(costmodel, embedded_expectations_match_literals)
{
    for (const auto& e : expected_rows())
    {
        const auto& lit = kTables.at(e.row);
        EXPECT_EQ(e.miller, lit[0]) << e.row;
        EXPECT_EQ(e.proc4, lit[1]) << e.row;
        EXPECT_EQ(e.proc8, lit[2]) << e.row;
    }
}

TEST(costmodel, check_flags_altered_table)
{
    auto j = CostTable::builtin().to_json();
    j["prices"]["M2"] = 4;
    const auto bad = check_cost_rows(cost_rows(CostTable::from_json(j)));
    EXPECT_FALSE(bad.empty());
}

TEST(costmodel, missing_price_named)
{
    auto j = CostTable::builtin().to_json();
    j["prices"].erase("M24");
    const CostTable t = CostTable::from_json(j);
    try
    {
        (void)cost_rows(t);
        FAIL() << "cost rows computed without M24";
    }
    catch (const UnpricedEntry& e)
    {
        EXPECT_EQ(e.name, "M24");
    }
}

TEST(costmodel, table_json_round_trip)
{
    const auto j = CostTable::builtin().to_json();
    EXPECT_EQ(CostTable::from_json(j).to_json(), j);
}

TEST(costmodel, slot_prices)
{
    const SymCost Me = SymCost::parse("M_e");
    EXPECT_EQ(slot_cost(Slot::U1), Me);
    EXPECT_EQ(slot_cost(Slot::U2), SymCost::parse("S_e"));
    EXPECT_EQ(slot_cost(Slot::V1), SymCost::parse("M_k"));
    EXPECT_EQ(slot_cost(Slot::V2), SymCost::parse("S_k"));
    EXPECT_EQ(slot_cost(Slot::L3), SymCost::parse("2M_e"));
    EXPECT_EQ(slot_cost(Slot::X0), SymCost::parse("δM_e"));
    EXPECT_EQ(slot_cost(Slot::T1), SymCost::parse("2M_{k/2}"));
    EXPECT_EQ(slot_cost(Slot::T4), SymCost::parse("M_k"));
    EXPECT_TRUE(slot_cost(Slot::T3).empty());
}

TEST(costmodel, measured_sequential_loop_matches_model)
{
    for (Family f : kAllFamilies)
    {
        const auto& c = desk_instance(f);
        const auto& fp = c.params();
        const NetContext ctx = NetContext::make(c.Et, c.Qt, c.untwist(c.P), {true, c.k() / 2});
        NetBlock b = initial_block(ctx);
        // Binary plan of 0b1011001: only "+" layout steps.
        const int digits[] = {0, 1, 1, 0, 0, 1};
        Tally tally;
        {
            CountScope scope;
            for (int d : digits)
                b = table_step(ctx, b, d ? StepKind::add : StepKind::dbl);
            tally = scope.tally();
        }
        const CostExpr expect = 3 * sequential_step_cost(fp.e, fp.delta, fp.k, StepKind::dbl) +
                                3 * sequential_step_cost(fp.e, fp.delta, fp.k, StepKind::add);
        const ModelReport rep = measured_vs_model(tally, expect);
        EXPECT_TRUE(rep.match) << family_name(f) << ": " << rep.str();
        // 4 M_e of W(2,0)^-1 rescaling per step.
        EXPECT_EQ(rep.scale.count({OpKind::M, fp.e}), 6 * 4) << family_name(f);

        // One extra squaring is flagged at its level.
        Tally injected = tally;
        injected.add(OpKind::S, fp.e);
        const ModelReport bad = measured_vs_model(injected, expect);
        ASSERT_FALSE(bad.match);
        ASSERT_EQ(bad.diffs.size(), 1u);
        EXPECT_EQ(bad.diffs[0].key, (CostKey{OpKind::S, fp.e}));
        EXPECT_EQ(bad.diffs[0].measured, bad.diffs[0].expected + 1);
    }
}
