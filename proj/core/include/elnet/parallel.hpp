// elnet: Elliptic-net pairings
// Copyright 2026 The elnet Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <elnet/costmodel.hpp>
#include <elnet/ellnet.hpp>
#include <elnet/op_counter.hpp>
#include <json.hpp>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

namespace elnet
{
struct ScheduleTask
{
    bool read = false;  ///< wait for a slot published elsewhere (zero cost)
    Slot slot;
    friend bool operator==(const ScheduleTask&, const ScheduleTask&) = default;
};

/// Per-processor task lists for one step kind. Tasks on U and V slots form the first
/// phase; every processor passes a barrier before its remaining tasks.
struct StepSchedule
{
    std::string name;
    StepKind kind = StepKind::dbl;
    std::vector<std::vector<ScheduleTask>> processors;

    std::size_t size() const { return processors.size(); }

    /// {"name":..,"kind":"double"|"add","processors":[["U1","read U5",...],...]}
    static StepSchedule from_json(const nlohmann::json& j);
    nlohmann::json to_json() const;
    /// Shipped schedule for 4 or 8 processors; validated once.
    static const StepSchedule& builtin(unsigned processors, StepKind kind);
};

struct ScheduleDiagnostics
{
    std::vector<std::string> errors;
    std::vector<std::string> warnings;  ///< e.g. a slot used without a listed read
    std::vector<SymCost> per_processor;
    std::size_t critical = 0;  ///< processor with the longest path (0-based)
    SymCost critical_path;

    bool ok() const { return errors.empty(); }
    std::string str() const;
};

/// Checks single production, reads of produced slots, completeness, and the absence of
/// wait cycles under program order plus the phase barrier. The longest path is picked
/// under the shipped cost table, with an unpriced S_k bounded by M_k, and must agree
/// across all families.
ScheduleDiagnostics validate_schedule(const StepSchedule& s);

/// Longest per-processor path for concrete parameters.
CostExpr critical_path(const ScheduleDiagnostics& d, unsigned e, unsigned delta, unsigned k);

struct StepRunStats
{
    std::vector<Tally> workers;
    std::size_t critical = 0;  ///< worker with the largest priced tally
};

/// One Double or DoubleAdd step on real threads, one per processor. The output equals
/// table_step(ctx, in, s.kind). Worker tallies are merged into the caller's scope.
NetBlock run_step_parallel(const NetContext& ctx, const NetBlock& in, const StepSchedule& s,
                           StepRunStats* stats = nullptr);

/// Accumulated over a loop driven by parallel_executor.
struct ParallelLoopStats
{
    std::size_t parallel_steps = 0;
    std::size_t sequential_steps = 0;  ///< shapes without a schedule
    Tally critical;                    ///< sum of per-step critical worker tallies
    std::mutex mu;
};

/// StepFn running "+"-layout Double and DoubleAdd steps through the shipped schedules
/// and other shapes through sequential_step.
StepFn parallel_executor(unsigned processors, std::shared_ptr<ParallelLoopStats> stats = {});
}  // namespace elnet
