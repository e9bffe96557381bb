// elnet: Elliptic-net pairings
// Copyright 2026 The elnet Authors.
// SPDX-License-Identifier: Apache-2.0

#include <elnet/curves.hpp>
#include <elnet/field.hpp>
#include <benchmark/benchmark.h>

using namespace elnet;

namespace
{
const Family kFamilies[] = {Family::bn, Family::bls12, Family::kss16, Family::bls24, Family::bls48};

void field_mul(benchmark::State& state)
{
    const auto& c = desk_instance(kFamilies[state.range(0)]);
    const unsigned level = c.tower->levels()[static_cast<std::size_t>(state.range(1))];
    Rng rng{1};
    const Fe a = raw::random(*c.tower, level, rng);
    const Fe b = raw::random(*c.tower, level, rng);
    for (auto _ : state)
        benchmark::DoNotOptimize(a * b);
    state.SetLabel(std::string{family_name(c.family)} + " F_p^" + std::to_string(level));
}

void field_sqr(benchmark::State& state)
{
    const auto& c = desk_instance(kFamilies[state.range(0)]);
    Rng rng{2};
    const Fe a = raw::random(*c.tower, c.k(), rng);
    for (auto _ : state)
        benchmark::DoNotOptimize(square(a));
    state.SetLabel(std::string{family_name(c.family)});
}

void frobenius_top(benchmark::State& state)
{
    const auto& c = desk_instance(kFamilies[state.range(0)]);
    Rng rng{3};
    const Fe a = raw::random(*c.tower, c.k(), rng);
    for (auto _ : state)
        benchmark::DoNotOptimize(frobenius(a, 1));
    state.SetLabel(std::string{family_name(c.family)});
}

// Tower depths, fixed here because registration runs before the family tables exist.
constexpr int kLevels[] = {4, 4, 5, 5, 6};

void mul_args(benchmark::internal::Benchmark* b)
{
    for (int f = 0; f < 5; ++f)
        for (int l = 1; l < kLevels[f]; ++l)
            b->Args({f, l});
}
}  // namespace

BENCHMARK(field_mul)->Apply(mul_args);
BENCHMARK(field_sqr)->DenseRange(0, 4);
BENCHMARK(frobenius_top)->DenseRange(0, 4);
