// elnet: Elliptic-net pairings
// Copyright 2026 The elnet Authors.
// SPDX-License-Identifier: Apache-2.0

#include <elnet/data.hpp>
#include <elnet/errors.hpp>
#include <elnet/parallel.hpp>
#include <atomic>
#include <barrier>
#include <exception>
#include <map>
#include <set>
#include <sstream>
#include <thread>

namespace elnet
{
namespace
{
bool first_phase(Slot s)
{
    return static_cast<int>(s) <= static_cast<int>(Slot::V2);
}

std::string proc_label(std::size_t p)
{
    return "processor " + std::to_string(p + 1);
}

/// Slots the step's outputs depend on, outputs included.
std::set<Slot> required_slots(StepKind k)
{
    std::set<Slot> need;
    std::vector<Slot> todo = step_outputs(k);
    while (!todo.empty())
    {
        const Slot s = todo.back();
        todo.pop_back();
        if (!need.insert(s).second)
            continue;
        for (Slot d : slot_deps(s))
            todo.push_back(d);
    }
    return need;
}

/// Structural checks only; returns the producer of every computed slot.
std::map<Slot, std::size_t> check_structure(const StepSchedule& s, ScheduleDiagnostics& d)
{
    std::map<Slot, std::size_t> producer;
    if (s.processors.empty())
        d.errors.push_back("schedule has no processors");
    for (std::size_t p = 0; p < s.size(); ++p)
        for (const auto& t : s.processors[p])
            if (!t.read)
            {
                if (const auto it = producer.find(t.slot); it != producer.end())
                    d.errors.push_back(std::string{slot_name(t.slot)} + " is written by " + proc_label(it->second) +
                                       " and " + proc_label(p));
                else
                    producer[t.slot] = p;
            }

    const auto need = required_slots(s.kind);
    for (Slot n : need)
        if (!producer.count(n))
            d.errors.push_back("incomplete: nothing computes " + std::string{slot_name(n)});
    for (const auto& [slot, p] : producer)
        if (!need.count(slot))
            d.warnings.push_back(proc_label(p) + " computes " + std::string{slot_name(slot)} +
                                 ", which the " + std::string{step_kind_name(s.kind)} + " step does not use");

    for (std::size_t p = 0; p < s.size(); ++p)
    {
        std::set<Slot> known;
        for (const auto& t : s.processors[p])
        {
            if (t.read)
            {
                if (!producer.count(t.slot))
                    d.errors.push_back(proc_label(p) + " reads " + std::string{slot_name(t.slot)} +
                                       ", which no processor computes");
                known.insert(t.slot);
                continue;
            }
            for (Slot dep : slot_deps(t.slot))
                if (!known.count(dep))
                {
                    d.warnings.push_back(proc_label(p) + " uses " + std::string{slot_name(dep)} + " for " +
                                         std::string{slot_name(t.slot)} + " without listing a read");
                    known.insert(dep);
                }
            known.insert(t.slot);
        }
    }
    if (!d.errors.empty())
        return producer;

    // Wait graph over compute tasks plus one barrier node.
    struct Node
    {
        std::size_t p, i;
    };
    std::vector<Node> nodes;
    std::map<std::pair<std::size_t, std::size_t>, std::size_t> index;
    for (std::size_t p = 0; p < s.size(); ++p)
        for (std::size_t i = 0; i < s.processors[p].size(); ++i)
            if (!s.processors[p][i].read)
            {
                index[{p, i}] = nodes.size();
                nodes.push_back({p, i});
            }
    const std::size_t barrier = nodes.size();
    std::vector<std::vector<std::size_t>> out(nodes.size() + 1);
    std::map<Slot, std::size_t> node_of;
    for (std::size_t n = 0; n < nodes.size(); ++n)
        node_of[s.processors[nodes[n].p][nodes[n].i].slot] = n;
    for (std::size_t p = 0; p < s.size(); ++p)
    {
        std::optional<std::size_t> prev;
        for (std::size_t i = 0; i < s.processors[p].size(); ++i)
        {
            if (s.processors[p][i].read)
                continue;
            const std::size_t n = index[{p, i}];
            if (prev)
                out[*prev].push_back(n);
            prev = n;
            const Slot slot = s.processors[p][i].slot;
            if (first_phase(slot))
                out[n].push_back(barrier);
            else
                out[barrier].push_back(n);
            for (Slot dep : slot_deps(slot))
                out[node_of.at(dep)].push_back(n);
        }
    }
    std::vector<std::size_t> indeg(out.size(), 0);
    for (const auto& v : out)
        for (std::size_t n : v)
            ++indeg[n];
    std::vector<std::size_t> ready;
    for (std::size_t n = 0; n < out.size(); ++n)
        if (indeg[n] == 0)
            ready.push_back(n);
    std::size_t seen = 0;
    while (!ready.empty())
    {
        const std::size_t n = ready.back();
        ready.pop_back();
        ++seen;
        for (std::size_t m : out[n])
            if (--indeg[m] == 0)
                ready.push_back(m);
    }
    if (seen != out.size())
    {
        std::string stuck;
        for (std::size_t n = 0; n < nodes.size(); ++n)
            if (indeg[n] != 0)
                stuck += (stuck.empty() ? "" : ", ") + proc_label(nodes[n].p) + ":" +
                         std::string{slot_name(s.processors[nodes[n].p][nodes[n].i].slot)};
        d.errors.push_back("read-before-write cycle among " + stuck);
    }
    return producer;
}

Cost bound_of(const CostExpr& e)
{
    const auto b = e.bound();
    if (!b)
        throw UnpricedEntry{e.str()};
    return *b;
}

bool cost_less(const Cost& a, const Cost& b)
{
    return a.i != b.i ? a.i < b.i : a.m < b.m;
}

/// Write-once slot board shared by the workers of one step.
class SharedBoard
{
public:
    enum : uint8_t
    {
        empty,
        ready,
        aborted
    };

    void publish(Slot s, Fe v)
    {
        auto& st = state_[static_cast<std::size_t>(s)];
        if (st.load(std::memory_order_acquire) != empty)
            throw ScheduleError{"slot " + std::string{slot_name(s)} + " written twice"};
        values_[static_cast<std::size_t>(s)] = std::move(v);
        uint8_t expect = empty;
        if (!st.compare_exchange_strong(expect, ready, std::memory_order_acq_rel))
            throw ScheduleError{"slot " + std::string{slot_name(s)} + " written twice"};
        st.notify_all();
    }

    const Fe& wait(Slot s) const
    {
        const auto& st = state_[static_cast<std::size_t>(s)];
        st.wait(empty, std::memory_order_acquire);
        if (st.load(std::memory_order_acquire) != ready)
            throw ScheduleError{"step aborted while waiting for " + std::string{slot_name(s)}};
        return values_[static_cast<std::size_t>(s)];
    }

    void abort()
    {
        for (auto& st : state_)
        {
            uint8_t expect = empty;
            if (st.compare_exchange_strong(expect, aborted))
                st.notify_all();
        }
    }

private:
    std::array<Fe, kSlotCount> values_;
    std::array<std::atomic<uint8_t>, kSlotCount> state_{};
};
}  // namespace

// ---------------------------------------------------------------------------

StepSchedule StepSchedule::from_json(const nlohmann::json& j)
{
    StepSchedule s;
    try
    {
        s.name = j.value("name", std::string{});
        const std::string kind = j.at("kind").get<std::string>();
        if (kind == "double")
            s.kind = StepKind::dbl;
        else if (kind == "add")
            s.kind = StepKind::add;
        else
            throw ConfigError{"schedule kind must be double or add, got " + kind};
        for (const auto& proc : j.at("processors"))
        {
            std::vector<ScheduleTask> tasks;
            for (const auto& t : proc)
            {
                std::string_view v = t.get_ref<const std::string&>();
                ScheduleTask task;
                if (v.substr(0, 5) == "read ")
                {
                    task.read = true;
                    v.remove_prefix(5);
                }
                const auto slot = parse_slot(v);
                if (!slot)
                    throw ConfigError{"unknown slot '" + std::string{v} + "' in schedule " + s.name};
                task.slot = *slot;
                tasks.push_back(task);
            }
            s.processors.push_back(std::move(tasks));
        }
    }
    catch (const nlohmann::json::exception& e)
    {
        throw ConfigError{"schedule " + s.name + ": " + e.what()};
    }
    return s;
}

nlohmann::json StepSchedule::to_json() const
{
    nlohmann::json procs = nlohmann::json::array();
    for (const auto& p : processors)
    {
        nlohmann::json tasks = nlohmann::json::array();
        for (const auto& t : p)
            tasks.push_back((t.read ? "read " : "") + std::string{slot_name(t.slot)});
        procs.push_back(tasks);
    }
    return {{"name", name}, {"kind", std::string{step_kind_name(kind)}}, {"processors", procs}};
}

const StepSchedule& StepSchedule::builtin(unsigned processors, StepKind kind)
{
    if (processors != 4 && processors != 8)
        throw UsageError{"schedules exist for 4 and 8 processors, not " + std::to_string(processors)};
    static const auto load = [](const char* name) {
        StepSchedule s = from_json(data::document(name));
        const auto d = validate_schedule(s);
        if (!d.ok())
            throw ScheduleError{"shipped schedule " + s.name + " is invalid: " + d.errors.front()};
        return s;
    };
    static const StepSchedule d4 = load("schedule_double4");
    static const StepSchedule a4 = load("schedule_add4");
    static const StepSchedule d8 = load("schedule_double8");
    static const StepSchedule a8 = load("schedule_add8");
    if (processors == 4)
        return kind == StepKind::dbl ? d4 : a4;
    return kind == StepKind::dbl ? d8 : a8;
}

std::string ScheduleDiagnostics::str() const
{
    std::ostringstream os;
    os << (ok() ? "valid" : "INVALID");
    for (const auto& e : errors)
        os << "\n  error: " << e;
    for (const auto& w : warnings)
        os << "\n  warning: " << w;
    for (std::size_t p = 0; p < per_processor.size(); ++p)
        os << "\n  " << proc_label(p) << ": " << per_processor[p].str() << (p == critical ? "  <- longest" : "");
    if (ok())
        os << "\n  longest path: " << critical_path.str();
    return os.str();
}

ScheduleDiagnostics validate_schedule(const StepSchedule& s)
{
    ScheduleDiagnostics d;
    check_structure(s, d);
    for (const auto& proc : s.processors)
    {
        SymCost c;
        for (const auto& t : proc)
            if (!t.read)
                c += slot_cost(t.slot);
        d.per_processor.push_back(c);
    }
    if (!d.ok())
        return d;
    std::optional<std::size_t> pick;
    for (Family f : kAllFamilies)
    {
        const auto& fp = family_params(f);
        std::size_t best = 0;
        Cost best_cost{-1, 0};
        for (std::size_t p = 0; p < d.per_processor.size(); ++p)
        {
            const Cost c = bound_of(d.per_processor[p].instantiate(fp.e, fp.delta, fp.k));
            if (cost_less(best_cost, c))
            {
                best = p;
                best_cost = c;
            }
        }
        if (!pick)
            pick = best;
        else if (*pick != best)
            d.warnings.push_back("longest path moves to " + proc_label(best) + " for " +
                                 std::string{family_name(f)});
    }
    d.critical = *pick;
    d.critical_path = d.per_processor[d.critical];
    return d;
}

CostExpr critical_path(const ScheduleDiagnostics& d, unsigned e, unsigned delta, unsigned k)
{
    CostExpr best;
    Cost best_cost{-1, 0};
    for (const auto& p : d.per_processor)
    {
        CostExpr c = p.instantiate(e, delta, k);
        const Cost b = bound_of(c);
        if (cost_less(best_cost, b))
        {
            best = std::move(c);
            best_cost = b;
        }
    }
    return best;
}

NetBlock run_step_parallel(const NetContext& ctx, const NetBlock& in, const StepSchedule& s, StepRunStats* stats)
{
    if (in.shift != 0)
        throw UsageError{"scheduled steps need a shift-0 block"};
    {
        ScheduleDiagnostics d;
        check_structure(s, d);
        if (!d.ok())
            throw ScheduleError{"schedule " + s.name + ": " + d.errors.front()};
    }

    const std::size_t n = s.size();
    SharedBoard board;
    std::vector<Tally> tallies(n);
    std::exception_ptr failure;
    std::mutex fail_mu;
    std::barrier sync{static_cast<std::ptrdiff_t>(n)};

    auto fail = [&](std::exception_ptr e) {
        {
            std::lock_guard lock{fail_mu};
            if (!failure)
                failure = e;
        }
        board.abort();
    };

    auto worker = [&](std::size_t p) {
        CountScope scope;
        const SlotReader get = [&board](Slot x) -> const Fe& { return board.wait(x); };
        const auto& tasks = s.processors[p];
        std::size_t i = 0;
        try
        {
            for (; i < tasks.size(); ++i)
            {
                if (tasks[i].read)
                    continue;  // waits happen at use
                if (!first_phase(tasks[i].slot))
                    break;
                board.publish(tasks[i].slot, compute_slot(tasks[i].slot, ctx, in, get));
            }
        }
        catch (...)
        {
            fail(std::current_exception());
        }
        sync.arrive_and_wait();
        try
        {
            for (; i < tasks.size(); ++i)
                if (!tasks[i].read)
                    board.publish(tasks[i].slot, compute_slot(tasks[i].slot, ctx, in, get));
        }
        catch (...)
        {
            fail(std::current_exception());
        }
        tallies[p] = scope.tally();
    };

    {
        std::vector<std::jthread> threads;
        threads.reserve(n);
        for (std::size_t p = 0; p < n; ++p)
            threads.emplace_back(worker, p);
    }
    if (failure)
        std::rethrow_exception(failure);

    Tally sum;
    for (const auto& t : tallies)
        sum.merge(t);
    counter::merge_into_current(sum);

    if (stats)
    {
        stats->workers = tallies;
        stats->critical = 0;
        Cost best{-1, 0};
        for (std::size_t p = 0; p < n; ++p)
        {
            const auto b = CostExpr::from_tally(tallies[p]).bound();
            if (b && cost_less(best, *b))
            {
                best = *b;
                stats->critical = p;
            }
        }
    }
    return assemble_step(s.kind, in, [&board](Slot x) -> const Fe& { return board.wait(x); });
}

StepFn parallel_executor(unsigned processors, std::shared_ptr<ParallelLoopStats> stats)
{
    const StepSchedule& dbl = StepSchedule::builtin(processors, StepKind::dbl);
    const StepSchedule& add = StepSchedule::builtin(processors, StepKind::add);
    return [&dbl, &add, stats](const NetContext& ctx, const NetBlock& in, int digit, int shift_out) {
        if (in.shift == 0 && shift_out == 0 && (digit == 0 || digit == 1))
        {
            StepRunStats st;
            NetBlock out = run_step_parallel(ctx, in, digit == 0 ? dbl : add, stats ? &st : nullptr);
            if (stats)
            {
                std::lock_guard lock{stats->mu};
                ++stats->parallel_steps;
                stats->critical.merge(st.workers[st.critical]);
            }
            return out;
        }
        if (stats)
        {
            std::lock_guard lock{stats->mu};
            ++stats->sequential_steps;
        }
        return sequential_step(ctx, in, digit, shift_out);
    };
}
}  // namespace elnet
