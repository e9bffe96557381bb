// elnet: Elliptic-net pairings
// Copyright 2026 The elnet Authors.
// SPDX-License-Identifier: Apache-2.0

#include <elnet/curves.hpp>
#include <elnet/parallel.hpp>
#include <benchmark/benchmark.h>

using namespace elnet;

namespace
{
const Family kFamilies[] = {Family::bn, Family::bls12, Family::kss16, Family::bls24, Family::bls48};

struct Setup
{
    const CurveInstance& c;
    NetContext ctx;
    NetBlock in;

    explicit Setup(Family f)
      : c{desk_instance(f)}, ctx{NetContext::make(c.Et, c.Qt, c.untwist(c.P), {true, c.k() / 2})}
    {
        Rng rng{9};
        in.center = 101;
        for (auto& w : in.w0)
            w = raw::random(*c.tower, ctx.level0, rng);
        for (auto& w : in.w1)
            w = raw::random(*c.tower, ctx.level1, rng);
    }
};

StepKind kind_of(int64_t k)
{
    return k == 0 ? StepKind::dbl : StepKind::add;
}

void step_sequential(benchmark::State& state)
{
    const Setup s{kFamilies[state.range(0)]};
    const StepKind k = kind_of(state.range(1));
    for (auto _ : state)
        benchmark::DoNotOptimize(table_step(s.ctx, s.in, k));
    state.SetLabel(std::string{family_name(s.c.family)} + " " + std::string{step_kind_name(k)});
}

// Thread start-up dominates at desk sizes; the larger families show the overlap.
void step_scheduled(benchmark::State& state)
{
    const Setup s{kFamilies[state.range(0)]};
    const StepKind k = kind_of(state.range(1));
    const StepSchedule& sched = StepSchedule::builtin(static_cast<unsigned>(state.range(2)), k);
    for (auto _ : state)
        benchmark::DoNotOptimize(run_step_parallel(s.ctx, s.in, sched));
    state.SetLabel(std::string{family_name(s.c.family)} + " " + sched.name);
}
}  // namespace

BENCHMARK(step_sequential)->ArgsProduct({{0, 1, 2, 3, 4}, {0, 1}})->Unit(benchmark::kMicrosecond);
BENCHMARK(step_scheduled)->ArgsProduct({{0, 1, 2, 3, 4}, {0, 1}, {4, 8}})->Unit(benchmark::kMicrosecond)->UseRealTime();
