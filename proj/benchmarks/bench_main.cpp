// elnet: Elliptic-net pairings
// Copyright 2026 The elnet Authors.
// SPDX-License-Identifier: Apache-2.0

#include <benchmark/benchmark.h>

// The distro's benchmark_main archive carries LTO bytecode only, so the entry point lives here.
BENCHMARK_MAIN();
