// elnet: Elliptic-net pairings
// Copyright 2026 The elnet Authors.
// SPDX-License-Identifier: Apache-2.0

#include "cli.hpp"

#include <elnet/checks.hpp>
#include <elnet/costmodel.hpp>
#include <elnet/errors.hpp>
#include <elnet/pairing.hpp>
#include <elnet/parallel.hpp>
#include <CLI11.hpp>
#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <memory>
#include <sstream>

namespace elnet::cli
{
namespace
{
std::string hex64(uint64_t v)
{
    char buf[19];
    std::snprintf(buf, sizeof buf, "0x%016llx", static_cast<unsigned long long>(v));
    return buf;
}

class Output
{
public:
    Output(std::ostream& out, bool records) : out_{out}, records_{records} {}

    bool records() const { return records_; }
    /// Human line; dropped in record mode.
    void text(const std::string& s)
    {
        if (!records_)
            out_ << s << '\n';
    }
    void record(const Record& r)
    {
        if (records_)
            out_ << r.to_json().dump() << '\n';
    }
    /// Both: a human line and the matching record.
    void both(const std::string& s, const Record& r)
    {
        text(s);
        record(r);
    }

private:
    std::ostream& out_;
    bool records_;
};

struct PairArgs
{
    std::string family;
    std::string x;
    std::string fixture;
    bool desk = false;
    unsigned processors = 0;
    bool verify_bilinearity = false;
    unsigned scalars = 20;
    bool count_only = false;
    bool force = false;
    bool trace = false;
    bool unmodified = false;
};

struct CostArgs
{
    unsigned processors = 0;
    bool check = false;
    bool steps = false;
    std::string table;
    unsigned security = 0;
};

struct VerifyArgs
{
    std::vector<std::string> families;
    std::vector<std::string> fixtures;
    std::vector<std::string> only;
    unsigned samples = 500;
    unsigned blocks = 100;
    unsigned scalars = 20;
};

struct FixtureArgs
{
    std::string family;
    std::string out;
    long range = 12;
};

struct ScheduleArgs
{
    unsigned processors = 4;
    std::string kind = "double";
    std::string family;
    std::string file;
};

void print_plan(Output& o, Family f, const LoopPlan& plan)
{
    const std::string fam{family_name(f)};
    o.both("loop scalar: " + std::string{plan.negative ? "-" : ""} + to_string(plan.value()) + " (" +
               std::to_string(bit_length(plan.value())) + " bits)",
           {"loop-bits", fam, 0, std::to_string(bit_length(plan.value())), "bits"});
    o.both("doublings: " + std::to_string(plan.steps()) + "  additions: " + std::to_string(plan.additions()) +
               " (" + std::to_string(plan.subtractions()) + " signed -1 digits)",
           {"doublings", fam, 0, std::to_string(plan.steps()), "steps"});
    o.record({"additions", fam, 0, std::to_string(plan.additions()), "steps"});
}

void print_model(Output& o, Family f, const LoopPlan& plan)
{
    const std::string fam{family_name(f)};
    const Cost miller = miller_cost(f, plan).reduce();
    o.both("model, Miller loop: " + miller.str(), {"miller-cost", fam, 0, miller.str(), "cost"});
    for (unsigned p : {4u, 8u})
    {
        const auto r = pairing_cost(f, plan, p);
        o.both("model, " + std::to_string(p) + " processors: " + r.reduced.str() + " (walk actually performed: " +
                   r.actual_walk.str() + ")",
               {"pairing-cost", fam, p, r.reduced.str(), "cost"});
    }
}

int cmd_pair(const PairArgs& a, Output& o)
{
    const Family f = parse_family(a.family);
    const std::string fam{family_name(f)};
    if (!a.x.empty() && !a.fixture.empty())
        throw UsageError{"--x and --fixture are exclusive"};

    std::optional<Seed> seed;
    if (!a.x.empty())
        seed = parse_seed(a.x);

    // Large seeds: count and cost paths only unless forced.
    if (seed && !a.force)
    {
        const LoopPlan plan = loop_plan(f, *seed);
        const auto v = evaluate_family(f, seed->value);
        o.text("family: " + fam + "  seed: " + seed->str());
        o.both("p: " + std::to_string(bit_length(v.p)) + " bits  r: " + std::to_string(bit_length(v.r)) + " bits",
               {"p-bits", fam, 0, std::to_string(bit_length(v.p)), "bits"});
        o.record({"r-bits", fam, 0, std::to_string(bit_length(v.r)), "bits"});
        print_plan(o, f, plan);
        if (!a.count_only)
        {
            print_model(o, f, plan);
            o.text("(pass --force-compute to evaluate the pairing at this size)");
        }
        return ok;
    }

    Fixture fx = !a.fixture.empty() ? Fixture::load(a.fixture)
                 : seed             ? Fixture{instantiate(f, *seed), std::nullopt}
                                    : Fixture{desk_instance(f), std::nullopt};
    const CurveInstance& inst = fx.instance;
    if (inst.family != f)
        throw ConfigError{"fixture family " + std::string{family_name(inst.family)} + " does not match --family"};

    o.text("family: " + fam + "  seed: " + inst.seed.str() + (seed ? "" : " (desk scale)"));
    o.both("p: " + std::to_string(bit_length(inst.p)) + " bits  r: " + std::to_string(bit_length(inst.r)) + " bits",
           {"p-bits", fam, 0, std::to_string(bit_length(inst.p)), "bits"});
    const LoopPlan plan = inst.loop();
    if (a.count_only)
    {
        print_plan(o, f, plan);
        return ok;
    }

    PairingOptions opt;
    opt.modified = !a.unmodified;
    std::shared_ptr<ParallelLoopStats> stats;
    if (a.processors != 0)
    {
        stats = std::make_shared<ParallelLoopStats>();
        opt.executor = parallel_executor(a.processors, stats);
    }
    if (a.trace)
        opt.trace = [&o, &fam, &a](const TraceRecord& t) { o.record({"trace", fam, a.processors, t.to_json().dump(), "step"}); };

    PairingOutput res;
    Tally tally;
    {
        CountScope scope;
        res = optimal_ate(inst, inst.Qt, inst.P, opt);
        tally = scope.tally();
    }
    const uint64_t dg = digest(*res.reduced);
    o.both("pairing digest: " + hex64(dg), {"pairing-digest", fam, a.processors, hex64(dg), "fnv64"});
    o.both("net walk: " + std::to_string(res.steps) + " steps, " + std::to_string(res.additions) + " additions, " +
               std::to_string(res.subtractions) + " subtractions",
           {"walk-steps", fam, a.processors, std::to_string(res.steps), "steps"});
    print_plan(o, f, plan);
    o.both("measured: " + tally.str(), {"measured", fam, a.processors, tally.to_json().dump(), "tally"});
    if (stats)
    {
        const auto crit = CostExpr::from_tally(stats->critical);
        const auto b = crit.bound();
        o.both("scheduled steps: " + std::to_string(stats->parallel_steps) + " on " + std::to_string(a.processors) +
                   " workers, " + std::to_string(stats->sequential_steps) + " sequential; critical path " +
                   crit.str() + (b ? " = " + b->str() : ""),
               {"critical-path", fam, a.processors, b ? b->str() : crit.str(), "cost"});
    }

    if (a.verify_bilinearity)
    {
        CheckOptions co;
        co.scalars = a.scalars;
        const auto r = run_check("bilinearity", fx, co);
        o.both(std::string{"bilinearity: "} + (r.pass ? "PASS" : "FAIL") + " (" + r.detail + ")",
               {"bilinearity", fam, 0, r.pass ? "PASS" : "FAIL", r.detail});
        if (!r.pass)
            return verification_failed;
    }
    return ok;
}

int cmd_cost_report(const CostArgs& a, Output& o)
{
    std::optional<CostTable> custom;
    if (!a.table.empty())
    {
        std::ifstream in{a.table};
        if (!in)
            throw ConfigError{"cannot open cost table " + a.table};
        try
        {
            custom = CostTable::from_json(nlohmann::json::parse(in));
        }
        catch (const nlohmann::json::parse_error& e)
        {
            throw ConfigError{"cost table " + a.table + ": " + e.what()};
        }
    }
    const CostTable& table = custom ? *custom : CostTable::builtin();
    const auto rows = cost_rows(table);

    const bool p4 = a.processors == 0 || a.processors == 4;
    const bool p8 = a.processors == 0 || a.processors == 8;
    unsigned current = 0;
    for (const auto& r : rows)
    {
        if (a.security != 0 && r.security != a.security)
            continue;
        if (r.security != current)
        {
            current = r.security;
            std::ostringstream h;
            h << "\nsecurity level " << current << "\n"
              << std::left << std::setw(12) << "curve" << std::setw(16) << "Miller" << (p4 ? "4 processors    " : "")
              << (p8 ? "8 processors" : "");
            o.text(h.str());
        }
        std::ostringstream line;
        line << std::left << std::setw(12) << r.row << std::setw(16) << r.miller.str();
        if (p4)
            line << std::setw(16) << r.proc4.str();
        if (p8)
            line << r.proc8.str();
        o.text(line.str());
        o.record({"miller", r.row, 0, r.miller.str(), "cost"});
        if (p4)
            o.record({"pairing", r.row, 4, r.proc4.str(), "cost"});
        if (p8)
            o.record({"pairing", r.row, 8, r.proc8.str(), "cost"});
    }

    if (a.steps)
    {
        o.text("\nstep costs (longest path)");
        for (Family f : kAllFamilies)
        {
            std::ostringstream line;
            line << std::left << std::setw(8) << family_name(f);
            for (unsigned p : {4u, 8u})
            {
                if ((p == 4 && !p4) || (p == 8 && !p8))
                    continue;
                for (StepKind k : {StepKind::dbl, StepKind::add})
                {
                    const Cost c = step_cost(StepCostSpec::of(f, p, k)).reduce(table);
                    line << "  " << step_kind_name(k) << p << " " << c.str();
                    o.record({std::string{"step-"} + std::string{step_kind_name(k)}, std::string{family_name(f)}, p,
                              c.str(), "cost"});
                }
            }
            o.text(line.str());
        }
    }

    if (a.check)
    {
        const auto bad = check_cost_rows(rows);
        const std::size_t values = 3 * expected_rows().size();
        if (bad.empty())
        {
            o.both("\ncheck: PASS (" + std::to_string(values) + " values)", {"check", "all", 0, "PASS", "status"});
            return ok;
        }
        for (const auto& b : bad)
            o.text("mismatch: " + b);
        o.both("\ncheck: FAIL (" + std::to_string(bad.size()) + " of " + std::to_string(values) + " values)",
               {"check", "all", 0, "FAIL", "status"});
        return verification_failed;
    }
    return ok;
}

int cmd_verify(const VerifyArgs& a, Output& o)
{
    std::vector<std::string_view> names;
    for (const auto& n : a.only)
    {
        const auto& all = check_names();
        if (std::find(all.begin(), all.end(), n) == all.end())
            throw UsageError{"unknown check '" + n + "'"};
        names.push_back(n);
    }
    if (names.empty())
        names = check_names();

    std::vector<Fixture> fixtures;
    for (const auto& path : a.fixtures)
        fixtures.push_back(Fixture::load(path));
    if (fixtures.empty())
    {
        std::vector<Family> fams;
        for (const auto& s : a.families)
            fams.push_back(parse_family(s));
        if (fams.empty())
            fams.assign(std::begin(kAllFamilies), std::end(kAllFamilies));
        for (Family f : fams)
            fixtures.push_back({desk_instance(f), std::nullopt});
    }

    CheckOptions co;
    co.samples = a.samples;
    co.blocks = a.blocks;
    co.scalars = a.scalars;
    std::size_t passed = 0, total = 0;
    for (const auto& fx : fixtures)
        for (auto n : names)
        {
            const auto r = run_check(n, fx, co);
            ++total;
            passed += r.pass;
            o.both(std::string{r.pass ? "PASS" : "FAIL"} + "  " + std::string{family_name(r.family)} + "  " + r.name +
                       "  " + r.detail,
                   {r.name, std::string{family_name(r.family)}, 0, r.pass ? "PASS" : "FAIL", r.detail});
        }
    o.text("verify: " + std::to_string(passed) + "/" + std::to_string(total) + " checks passed");
    return passed == total ? ok : verification_failed;
}

int cmd_fixture(const FixtureArgs& a, Output& o)
{
    const Family f = parse_family(a.family);
    if (a.range < 6)
        throw UsageError{"--net-range must be at least 6"};
    Fixture fx{desk_instance(f), NetTable::of_instance(desk_instance(f), -a.range, a.range)};
    const std::string text = fx.to_json().dump(1);
    if (a.out.empty() || a.out == "-")
    {
        o.text(text);
        return ok;
    }
    std::ofstream out{a.out};
    if (!out)
        throw ConfigError{"cannot write " + a.out};
    out << text << '\n';
    o.text("wrote " + a.out);
    return ok;
}

int cmd_schedule(const ScheduleArgs& a, Output& o)
{
    StepSchedule s;
    if (!a.file.empty())
    {
        std::ifstream in{a.file};
        if (!in)
            throw ConfigError{"cannot open schedule " + a.file};
        try
        {
            s = StepSchedule::from_json(nlohmann::json::parse(in));
        }
        catch (const nlohmann::json::parse_error& e)
        {
            throw ConfigError{"schedule " + a.file + ": " + e.what()};
        }
    }
    else
    {
        if (a.kind != "double" && a.kind != "add")
            throw UsageError{"--kind must be double or add"};
        s = StepSchedule::builtin(a.processors, a.kind == "double" ? StepKind::dbl : StepKind::add);
    }
    const auto d = validate_schedule(s);
    o.text("schedule " + s.name + ": " + d.str());
    o.record({"schedule-valid", s.name, static_cast<unsigned>(s.size()), d.ok() ? "PASS" : "FAIL", "status"});
    if (!d.ok())
        return verification_failed;
    o.record({"longest-path", s.name, static_cast<unsigned>(s.size()), d.critical_path.str(), "formula"});
    if (!a.family.empty())
    {
        const Family f = parse_family(a.family);
        const auto& fp = family_params(f);
        const CostExpr c = critical_path(d, fp.e, fp.delta, fp.k);
        const Cost r = c.reduce();
        o.both(std::string{family_name(f)} + ": " + c.str() + " = " + r.str(),
               {"step-cost", std::string{family_name(f)}, static_cast<unsigned>(s.size()), r.str(), "cost"});
    }
    return ok;
}
}  // namespace

nlohmann::json Record::to_json() const
{
    return {{"metric", metric}, {"family", family}, {"processors", processors}, {"value", value}, {"unit", unit}};
}

Record Record::from_json(const nlohmann::json& j)
{
    return {j.at("metric").get<std::string>(), j.at("family").get<std::string>(), j.at("processors").get<unsigned>(),
            j.at("value").get<std::string>(), j.at("unit").get<std::string>()};
}

std::vector<Record> parse_records(const std::string& text)
{
    std::vector<Record> v;
    std::istringstream in{text};
    std::string line;
    while (std::getline(in, line))
        if (!line.empty())
            v.push_back(Record::from_json(nlohmann::json::parse(line)));
    return v;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"elnet: optimal ate pairings through elliptic nets"};
    app.name("elnet");
    app.require_subcommand(1);
    std::string format = "table";
    app.add_option("--format", format, "Output format")->check(CLI::IsMember({"table", "records"}));

    PairArgs pa;
    auto* pair = app.add_subcommand("pair", "Compute a pairing and report counts");
    pair->add_option("--family", pa.family, "bn, bls12, bls24, bls48 or kss16")->required();
    pair->add_option("--x", pa.x, "Seed as a decimal or a power expression such as 2^114+2^101-2^14-1");
    pair->add_option("--fixture", pa.fixture, "Instance document written by `elnet fixture`");
    pair->add_flag("--desk-scale", pa.desk, "Use the searched small instance (default without --x)");
    pair->add_option("--processors", pa.processors, "0 runs sequentially; 4 or 8 use the step schedules")
        ->check(CLI::IsMember({0u, 4u, 8u}));
    pair->add_flag("--verify-bilinearity", pa.verify_bilinearity, "Check e([a]Q,P) = e(Q,[a]P) = e(Q,P)^a");
    pair->add_option("--scalars", pa.scalars, "Scalars for --verify-bilinearity");
    pair->add_flag("--count-only", pa.count_only, "Print loop step counts only");
    pair->add_flag("--force-compute", pa.force, "Evaluate the pairing even for a full-size seed");
    pair->add_flag("--trace", pa.trace, "Emit one record per net step");
    pair->add_flag("--unmodified", pa.unmodified, "Walk the unmodified net");

    CostArgs ca;
    auto* cost = app.add_subcommand("cost-report", "Operation counts for the reference parameter rows");
    cost->add_option("--processors", ca.processors, "Restrict to 4 or 8 processors")
        ->check(CLI::IsMember({4u, 8u}));
    cost->add_flag("--check", ca.check, "Compare against the embedded expected values");
    cost->add_flag("--steps", ca.steps, "Also print per-step longest paths");
    cost->add_option("--cost-table", ca.table, "Alternative cost table document");
    cost->add_option("--security", ca.security, "Only rows of this security level");

    VerifyArgs va;
    auto* verify = app.add_subcommand("verify", "Run the invariant suite");
    verify->add_option("--family", va.families, "Families to check (default all)");
    verify->add_option("--fixture", va.fixtures, "Fixture documents to check instead of the desk instances");
    verify->add_option("--only", va.only, "Run only these checks");
    verify->add_option("--samples", va.samples, "Recurrence tuples");
    verify->add_option("--blocks", va.blocks, "Random blocks per schedule");
    verify->add_option("--scalars", va.scalars, "Bilinearity scalars");

    FixtureArgs fa;
    auto* fixture = app.add_subcommand("fixture", "Write a desk-scale instance with a stored net");
    fixture->add_option("--family", fa.family, "Family of the desk instance")->required();
    fixture->add_option("--out", fa.out, "Output path (stdout when omitted)");
    fixture->add_option("--net-range", fa.range, "Store W(u,v) for |u| <= range");

    ScheduleArgs sa;
    auto* sched = app.add_subcommand("schedule", "Validate a step schedule and print its longest path");
    sched->add_option("--processors", sa.processors, "Shipped schedule for 4 or 8 processors")->check(CLI::IsMember({4u, 8u}));
    sched->add_option("--kind", sa.kind, "double or add");
    sched->add_option("--family", sa.family, "Also price the longest path for this family");
    sched->add_option("--file", sa.file, "Schedule document instead of a shipped one");

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try
    {
        app.parse(rev);
    }
    catch (const CLI::ParseError& e)
    {
        const int code = app.exit(e, out, err);
        return code == 0 ? ok : usage_error;
    }

    Output o{out, format == "records"};
    try
    {
        if (*pair)
            return cmd_pair(pa, o);
        if (*cost)
            return cmd_cost_report(ca, o);
        if (*verify)
            return cmd_verify(va, o);
        if (*fixture)
            return cmd_fixture(fa, o);
        return cmd_schedule(sa, o);
    }
    catch (const UsageError& e)
    {
        err << "usage error: " << e.what() << '\n';
        return usage_error;
    }
    catch (const UnpricedEntry& e)
    {
        err << "configuration error: " << e.what() << '\n';
        return config_error;
    }
    catch (const ConfigError& e)
    {
        err << "configuration error: " << e.what() << '\n';
        return config_error;
    }
    catch (const ScheduleError& e)
    {
        err << "configuration error: " << e.what() << '\n';
        return config_error;
    }
    catch (const std::exception& e)
    {
        err << "error: " << e.what() << '\n';
        return verification_failed;
    }
}
}  // namespace elnet::cli
