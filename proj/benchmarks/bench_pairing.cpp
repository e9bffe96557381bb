// elnet: Elliptic-net pairings
// Copyright 2026 The elnet Authors.
// SPDX-License-Identifier: Apache-2.0

#include <elnet/costmodel.hpp>
#include <elnet/curves.hpp>
#include <elnet/pairing.hpp>
#include <benchmark/benchmark.h>

using namespace elnet;

namespace
{
const Family kFamilies[] = {Family::bn, Family::bls12, Family::kss16, Family::bls24, Family::bls48};

PairingOptions unreduced(bool modified)
{
    PairingOptions o;
    o.reduce = false;
    o.modified = modified;
    return o;
}

// Net loop on the desk instances, without the final exponentiation.
void net_ate_desk(benchmark::State& state)
{
    const auto& c = desk_instance(kFamilies[state.range(0)]);
    const PairingOptions o = unreduced(state.range(1) != 0);
    for (auto _ : state)
        benchmark::DoNotOptimize(optimal_ate(c, c.Qt, c.P, o).raw);
    state.SetLabel(std::string{family_name(c.family)} + (o.modified ? " modified" : " plain"));
}

void miller_ate_desk(benchmark::State& state)
{
    const auto& c = desk_instance(kFamilies[state.range(0)]);
    for (auto _ : state)
        benchmark::DoNotOptimize(miller_optimal_ate(c, c.Qt, c.P));
    state.SetLabel(std::string{family_name(c.family)});
}

// Full-size seeds: the net loop the cost tables describe.
void net_ate_reference(benchmark::State& state)
{
    const auto& row = reference_rows()[static_cast<std::size_t>(state.range(0))];
    const CurveInstance c = instantiate(row.family, parse_seed(row.seed));
    const PairingOptions o = unreduced(true);
    for (auto _ : state)
        benchmark::DoNotOptimize(optimal_ate(c, c.Qt, c.P, o).raw);
    state.SetLabel(row.id);
}

void cost_report(benchmark::State& state)
{
    for (auto _ : state)
        benchmark::DoNotOptimize(cost_rows());
}
}  // namespace

BENCHMARK(net_ate_desk)->ArgsProduct({{0, 1, 2, 3, 4}, {0, 1}})->Unit(benchmark::kMicrosecond);
BENCHMARK(miller_ate_desk)->DenseRange(0, 4)->Unit(benchmark::kMicrosecond);
BENCHMARK(net_ate_reference)->DenseRange(0, 5)->Unit(benchmark::kMillisecond);
BENCHMARK(cost_report)->Unit(benchmark::kMicrosecond);
