// elnet: Elliptic-net pairings
// Copyright 2026 The elnet Authors.
// SPDX-License-Identifier: Apache-2.0

#include <elnet/costmodel.hpp>
#include <elnet/curves.hpp>
#include <elnet/errors.hpp>
#include <elnet/pairing.hpp>
#include <elnet/parallel.hpp>
#include <gtest/gtest.h>

using namespace elnet;

namespace
{
NetContext context(Family f)
{
    const auto& c = desk_instance(f);
    return NetContext::make(c.Et, c.Qt, c.untwist(c.P), {true, c.k() / 2});
}

NetBlock random_block(const CurveInstance& c, const NetContext& ctx, Rng& rng)
{
    Uncounted quiet;
    NetBlock in;
    in.center = rng.range(Int{4}, Int{1000});
    for (auto& w : in.w0)
        w = raw::random(*c.tower, ctx.level0, rng);
    for (auto& w : in.w1)
        w = raw::random(*c.tower, ctx.level1, rng);
    return in;
}

/// Moves the computation of `s` to the end of processor `p`.
void move_to(StepSchedule& sch, Slot s, std::size_t p)
{
    for (auto& tasks : sch.processors)
        std::erase_if(tasks, [s](const ScheduleTask& t) { return !t.read && t.slot == s; });
    sch.processors[p].push_back(ScheduleTask{false, s});
}

bool has_error(const ScheduleDiagnostics& d, const std::string& needle)
{
    for (const auto& e : d.errors)
        if (e.find(needle) != std::string::npos)
            return true;
    return false;
}

struct Case
{
    unsigned procs;
    StepKind kind;
};

const Case kCases[] = {{4, StepKind::dbl}, {4, StepKind::add}, {8, StepKind::dbl}, {8, StepKind::add}};
}  // namespace

TEST(parallel, shipped_schedules_match_closed_forms)
{
    for (const Case& c : kCases)
    {
        const StepSchedule& s = StepSchedule::builtin(c.procs, c.kind);
        EXPECT_EQ(s.size(), c.procs);
        const auto d = validate_schedule(s);
        EXPECT_TRUE(d.ok()) << d.str();
        EXPECT_EQ(d.critical_path, step_closed_form(c.procs, c.kind)) << s.name;
    }
    EXPECT_EQ(validate_schedule(StepSchedule::builtin(4, StepKind::dbl)).critical_path.str(), "(7+2δ)M_e+3S_e+M_k");
    EXPECT_EQ(validate_schedule(StepSchedule::builtin(8, StepKind::add)).critical_path.str(), "(4+δ)M_e+2S_e+M_k");
    EXPECT_THROW(StepSchedule::builtin(6, StepKind::dbl), UsageError);
}

TEST(parallel, implicit_reads_reported)
{
    EXPECT_EQ(validate_schedule(StepSchedule::builtin(4, StepKind::dbl)).warnings.size(), 2u);
    EXPECT_EQ(validate_schedule(StepSchedule::builtin(4, StepKind::add)).warnings.size(), 1u);
    EXPECT_TRUE(validate_schedule(StepSchedule::builtin(8, StepKind::dbl)).warnings.empty());
}

TEST(parallel, critical_paths_per_family)
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
        const auto& fp = family_params(r.f);
        auto cp = [&](unsigned procs, StepKind k) {
            return critical_path(validate_schedule(StepSchedule::builtin(procs, k)), fp.e, fp.delta, fp.k).reduce().m;
        };
        EXPECT_EQ(cp(4, StepKind::dbl), r.d4);
        EXPECT_EQ(cp(4, StepKind::add), r.a4);
        EXPECT_EQ(cp(8, StepKind::dbl), r.s8);
        EXPECT_EQ(cp(8, StepKind::add), r.s8);
    }
}

TEST(parallel, bit_identical_to_sequential)
{
    for (Family f : kAllFamilies)
    {
        const auto& c = desk_instance(f);
        const NetContext ctx = context(f);
        Rng rng{static_cast<unsigned long>(f) + 40};
        for (const Case& k : kCases)
        {
            const StepSchedule& s = StepSchedule::builtin(k.procs, k.kind);
            for (int i = 0; i < 10; ++i)
            {
                const NetBlock in = random_block(c, ctx, rng);
                Tally seq, par;
                NetBlock a, b;
                {
                    CountScope scope;
                    a = table_step(ctx, in, k.kind);
                    seq = scope.tally();
                }
                {
                    CountScope scope;
                    b = run_step_parallel(ctx, in, s);
                    par = scope.tally();
                }
                ASSERT_EQ(a, b) << family_name(f) << " " << s.name;
                ASSERT_EQ(seq, par) << family_name(f) << " " << s.name;
            }
        }
    }
}

TEST(parallel, measured_critical_worker)
{
    const Family f = Family::bls24;
    const auto& c = desk_instance(f);
    const NetContext ctx = context(f);
    Rng rng{3};
    const NetBlock in = random_block(c, ctx, rng);
    for (auto [k, expect] : {std::pair{Case{4, StepKind::dbl}, 351}, {Case{4, StepKind::add}, 357},
                             {Case{8, StepKind::dbl}, 264}, {Case{8, StepKind::add}, 264}})
    {
        StepRunStats stats;
        (void)run_step_parallel(ctx, in, StepSchedule::builtin(k.procs, k.kind), &stats);
        ASSERT_EQ(stats.workers.size(), k.procs);
        const auto crit = CostExpr::from_tally(stats.workers[stats.critical]).bound();
        ASSERT_TRUE(crit);
        EXPECT_EQ(crit->m, expect);
        for (const auto& w : stats.workers)
            EXPECT_LE(CostExpr::from_tally(w).bound()->m, expect);
    }
}

TEST(parallel, wait_cycle_rejected)
{
    StepSchedule s = StepSchedule::builtin(4, StepKind::dbl);
    s.name = "cyclic";
    // Y1 waits for X0 behind T2, and T2 waits for X2 behind Y1.
    move_to(s, Slot::Y1, 0);
    move_to(s, Slot::X2, 0);
    move_to(s, Slot::T2, 1);
    move_to(s, Slot::X0, 1);
    const auto d = validate_schedule(s);
    EXPECT_FALSE(d.ok());
    EXPECT_TRUE(has_error(d, "cycle")) << d.str();
    const auto& c = desk_instance(Family::bn);
    const NetContext ctx = context(Family::bn);
    Rng rng{1};
    EXPECT_THROW(run_step_parallel(ctx, random_block(c, ctx, rng), s), ScheduleError);
}

TEST(parallel, missing_output_rejected)
{
    StepSchedule s = StepSchedule::builtin(4, StepKind::add);
    for (auto& p : s.processors)
        std::erase_if(p, [](const ScheduleTask& t) { return !t.read && t.slot == Slot::L9; });
    const auto d = validate_schedule(s);
    EXPECT_FALSE(d.ok());
    EXPECT_TRUE(has_error(d, "L9")) << d.str();
}

TEST(parallel, double_write_rejected)
{
    StepSchedule s = StepSchedule::builtin(8, StepKind::dbl);
    s.processors[1].push_back(ScheduleTask{false, Slot::L1});
    const auto d = validate_schedule(s);
    EXPECT_FALSE(d.ok());
    EXPECT_TRUE(has_error(d, "L1")) << d.str();
}

TEST(parallel, read_of_unproduced_slot_rejected)
{
    StepSchedule s = StepSchedule::builtin(8, StepKind::dbl);
    s.processors[2].push_back(ScheduleTask{true, Slot::L9});
    EXPECT_FALSE(validate_schedule(s).ok());
}

TEST(parallel, schedule_json_round_trip)
{
    for (const Case& c : kCases)
    {
        const StepSchedule& s = StepSchedule::builtin(c.procs, c.kind);
        const StepSchedule back = StepSchedule::from_json(s.to_json());
        EXPECT_EQ(back.name, s.name);
        EXPECT_EQ(back.kind, s.kind);
        EXPECT_EQ(back.processors, s.processors);
    }
    EXPECT_THROW(StepSchedule::from_json(nlohmann::json::parse(R"({"name":"x","kind":"double","processors":[["Q7"]]})")),
                 ConfigError);
}

TEST(parallel, executor_drives_whole_pairing)
{
    for (Family f : kAllFamilies)
    {
        const auto& c = desk_instance(f);
        const Fe seq = *optimal_ate(c, c.Qt, c.P).reduced;
        for (unsigned procs : {4u, 8u})
        {
            auto stats = std::make_shared<ParallelLoopStats>();
            PairingOptions o;
            o.executor = parallel_executor(procs, stats);
            EXPECT_EQ(*optimal_ate(c, c.Qt, c.P, o).reduced, seq) << family_name(f) << " " << procs;
        }
    }
}

TEST(parallel, executor_on_full_size_bn_loop)
{
    const CurveInstance c = instantiate(Family::bn, parse_seed("2^114+2^101-2^14-1"));
    PairingOptions seq_opt;
    seq_opt.reduce = false;
    const Fe seq = optimal_ate(c, c.Qt, c.P, seq_opt).raw;
    auto stats = std::make_shared<ParallelLoopStats>();
    PairingOptions o = seq_opt;
    o.executor = parallel_executor(8, stats);
    EXPECT_EQ(optimal_ate(c, c.Qt, c.P, o).raw, seq);
    EXPECT_EQ(stats->parallel_steps + stats->sequential_steps, 116u);
    EXPECT_GT(stats->parallel_steps, 0u);
}
