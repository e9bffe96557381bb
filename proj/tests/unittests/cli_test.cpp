// elnet: Elliptic-net pairings
// Copyright 2026 The elnet Authors.
// SPDX-License-Identifier: Apache-2.0

#include "cli.hpp"

#include <elnet/checks.hpp>
#include <elnet/costmodel.hpp>
#include <elnet/parallel.hpp>
#include <gtest/gtest.h>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace elnet;

namespace
{
struct Invocation
{
    int code;
    std::string out, err;
};

Invocation run(std::vector<std::string> args)
{
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

/// Moves the computation of `s` to the end of processor `p`.
void move_to(StepSchedule& sch, Slot s, std::size_t p)
{
    for (auto& tasks : sch.processors)
        std::erase_if(tasks, [s](const ScheduleTask& t) { return !t.read && t.slot == s; });
    sch.processors[p].push_back(ScheduleTask{false, s});
}

std::string fixture(const char* name)
{
    return std::string{ELNET_FIXTURE_DIR} + "/" + name + ".json";
}

std::filesystem::path scratch(const std::string& name)
{
    const auto dir = std::filesystem::temp_directory_path() / "elnet-cli-test";
    std::filesystem::create_directories(dir);
    return dir / name;
}

void write(const std::filesystem::path& p, const std::string& text)
{
    std::ofstream{p} << text;
}

bool contains(const std::string& hay, const std::string& needle)
{
    return hay.find(needle) != std::string::npos;
}
}  // namespace

TEST(cli, cost_report_check)
{
    const Invocation r = run({"cost-report", "--check"});
    EXPECT_EQ(r.code, cli::ok) << r.err;
    EXPECT_TRUE(contains(r.out, "9637M+2I"));
    EXPECT_TRUE(contains(r.out, "6922M+2I"));
    EXPECT_TRUE(contains(r.out, "34778M"));
    EXPECT_TRUE(contains(r.out, "36909M"));
    EXPECT_TRUE(contains(r.out, "27720M"));
    EXPECT_TRUE(contains(r.out, "check: PASS"));
}

TEST(cli, cost_report_rejects_six_processors)
{
    EXPECT_EQ(run({"cost-report", "--processors", "6"}).code, cli::usage_error);
    EXPECT_EQ(run({"cost-report", "--processors", "8"}).code, cli::ok);
}

TEST(cli, cost_report_records)
{
    const Invocation r = run({"--format", "records", "cost-report", "--processors", "4", "--steps"});
    ASSERT_EQ(r.code, cli::ok);
    const auto recs = cli::parse_records(r.out);
    bool found = false;
    for (const auto& rec : recs)
        if (rec.metric == "pairing" && rec.family == "kss16-128")
        {
            EXPECT_EQ(rec.processors, 4u);
            EXPECT_EQ(rec.value, "9637M+2I");
            found = true;
        }
    EXPECT_TRUE(found);
}

TEST(cli, records_round_trip)
{
    for (const auto& args : std::vector<std::vector<std::string>>{
             {"--format", "records", "cost-report", "--check", "--steps"},
             {"--format", "records", "pair", "--family", "bn", "--processors", "4", "--trace"},
             {"--format", "records", "pair", "--family", "bls24", "--x", "-2^56-2^43+2^9-2^6"},
             {"--format", "records", "verify", "--family", "bls12", "--only", "tate"},
         })
    {
        const Invocation r = run(args);
        ASSERT_EQ(r.code, cli::ok) << r.err;
        const auto recs = cli::parse_records(r.out);
        ASSERT_FALSE(recs.empty());
        std::string again;
        for (const auto& rec : recs)
        {
            EXPECT_EQ(cli::Record::from_json(rec.to_json()), rec);
            again += rec.to_json().dump() + "\n";
        }
        EXPECT_EQ(again, r.out);
        EXPECT_EQ(cli::parse_records(again), recs);
    }
}

TEST(cli, alternative_cost_table_mismatch_exits_one)
{
    auto j = CostTable::builtin().to_json();
    j["prices"]["M2"] = 4;
    const auto path = scratch("m2.json");
    write(path, j.dump());
    const Invocation r = run({"cost-report", "--check", "--cost-table", path.string()});
    EXPECT_EQ(r.code, cli::verification_failed);
    EXPECT_TRUE(contains(r.out, "check: FAIL"));
}

TEST(cli, unpriced_entry_is_config_error)
{
    auto j = CostTable::builtin().to_json();
    j["prices"].erase("M24");
    const auto path = scratch("no-m24.json");
    write(path, j.dump());
    const Invocation r = run({"cost-report", "--cost-table", path.string()});
    EXPECT_EQ(r.code, cli::config_error);
    EXPECT_TRUE(contains(r.err, "M24"));
    EXPECT_EQ(run({"cost-report", "--cost-table", scratch("absent.json").string()}).code, cli::config_error);
}

TEST(cli, pair_count_only_full_size_bn)
{
    const Invocation r = run({"pair", "--family", "bn", "--x", "2^114+2^101-2^14-1", "--count-only"});
    EXPECT_EQ(r.code, cli::ok);
    EXPECT_TRUE(contains(r.out, "doublings: 116  additions: 6")) << r.out;
}

TEST(cli, pair_full_size_defaults_to_model)
{
    const Invocation r = run({"pair", "--family", "kss16", "--x", "2^35-2^32-2^18+2^8+1"});
    EXPECT_EQ(r.code, cli::ok);
    EXPECT_TRUE(contains(r.out, "doublings: 35  additions: 4"));
    EXPECT_TRUE(contains(r.out, "9637M+2I"));
    EXPECT_FALSE(contains(r.out, "pairing digest"));
}

TEST(cli, pair_desk_bilinearity)
{
    const Invocation r = run({"pair", "--family", "bls12", "--desk-scale", "--verify-bilinearity"});
    EXPECT_EQ(r.code, cli::ok);
    EXPECT_TRUE(contains(r.out, "bilinearity: PASS (20/20 scalars)")) << r.out;
}

TEST(cli, pair_processors_agree)
{
    auto digest_of = [](const std::string& procs) {
        const Invocation r = run({"--format", "records", "pair", "--family", "bn", "--processors", procs});
        for (const auto& rec : cli::parse_records(r.out))
            if (rec.metric == "pairing-digest")
                return rec.value;
        return std::string{};
    };
    const std::string seq = digest_of("0");
    EXPECT_FALSE(seq.empty());
    EXPECT_EQ(digest_of("4"), seq);
    EXPECT_EQ(digest_of("8"), seq);
}

TEST(cli, usage_errors)
{
    EXPECT_EQ(run({"pair", "--family", "unknown"}).code, cli::usage_error);
    EXPECT_EQ(run({"pair"}).code, cli::usage_error);
    EXPECT_EQ(run({}).code, cli::usage_error);
    EXPECT_EQ(run({"verify", "--only", "everything"}).code, cli::usage_error);
    EXPECT_EQ(run({"pair", "--family", "bn", "--x", "2^^1"}).code, cli::usage_error);
    EXPECT_EQ(run({"--help"}).code, cli::ok);
}

TEST(cli, verify_only_one_check)
{
    const Invocation r = run({"verify", "--family", "bn", "--only", "twist-transport"});
    EXPECT_EQ(r.code, cli::ok);
    EXPECT_TRUE(contains(r.out, "PASS  bn  twist-transport"));
    EXPECT_FALSE(contains(r.out, "recurrence"));
    EXPECT_TRUE(contains(r.out, "verify: 1/1 checks passed"));
}

TEST(cli, verify_shipped_fixtures)
{
    const Invocation r = run({"verify", "--fixture", fixture("bn"), "--fixture", fixture("bls12"), "--blocks", "10"});
    EXPECT_EQ(r.code, cli::ok) << r.out;
    EXPECT_TRUE(contains(r.out, "verify: 18/18 checks passed"));
}

TEST(cli, tampered_fixture_fails_recurrence)
{
    std::ifstream in{fixture("bn")};
    auto j = nlohmann::json::parse(in);
    const Int lo = parse_decimal(j["net"]["lo"].get<std::string>());
    const auto idx = static_cast<std::size_t>(Int{2 - lo}.get_si());
    auto& c0 = j["net"]["w0"][idx][0];
    const Int p = parse_decimal(j["instance"]["p"].get<std::string>());
    c0 = to_string(mod(parse_decimal(c0.get<std::string>()) + 1, p));
    const auto path = scratch("tampered.json");
    write(path, j.dump());

    const Invocation r = run({"verify", "--fixture", path.string(), "--only", "recurrence"});
    EXPECT_EQ(r.code, cli::verification_failed);
    EXPECT_TRUE(contains(r.out, "FAIL  bn  recurrence")) << r.out;

    const Invocation ok = run({"verify", "--fixture", fixture("bn"), "--only", "recurrence"});
    EXPECT_EQ(ok.code, cli::ok);
}

TEST(cli, fixture_command_round_trips)
{
    const auto path = scratch("bls12.json");
    ASSERT_EQ(run({"fixture", "--family", "bls12", "--out", path.string(), "--net-range", "8"}).code, cli::ok);
    const Fixture fx = Fixture::load(path.string());
    ASSERT_TRUE(fx.net);
    EXPECT_EQ(fx.net->hi, 8);
    EXPECT_EQ(fx.instance.p, desk_instance(Family::bls12).p);
    std::ifstream shipped{fixture("bls12")};
    EXPECT_EQ(Fixture::from_json(nlohmann::json::parse(shipped)).instance.to_json(), fx.instance.to_json());
}

TEST(cli, schedule_dump)
{
    const Invocation r = run({"schedule", "--processors", "4", "--kind", "double", "--family", "bls48"});
    EXPECT_EQ(r.code, cli::ok);
    EXPECT_TRUE(contains(r.out, "(7+2δ)M_e+3S_e+M_k"));
    EXPECT_TRUE(contains(r.out, "1053M"));
    EXPECT_EQ(run({"schedule", "--processors", "8", "--kind", "add", "--family", "kss16"}).code, cli::ok);
    EXPECT_EQ(run({"schedule", "--kind", "triple"}).code, cli::usage_error);
}

TEST(cli, bad_schedule_file)
{
    StepSchedule s = StepSchedule::builtin(4, StepKind::add);
    move_to(s, Slot::Y4, 0);
    move_to(s, Slot::X2, 0);
    move_to(s, Slot::T2, 1);
    move_to(s, Slot::X6, 1);
    const auto path = scratch("cyclic.json");
    write(path, s.to_json().dump());
    const Invocation r = run({"schedule", "--file", path.string()});
    EXPECT_EQ(r.code, cli::verification_failed);
    EXPECT_TRUE(contains(r.out, "cycle")) << r.out;
}
