// elnet: Elliptic-net pairings
// Copyright 2026 The elnet Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <json.hpp>
#include <ostream>
#include <string>
#include <vector>

namespace elnet::cli
{
enum Exit : int
{
    ok = 0,
    verification_failed = 1,
    usage_error = 2,
    config_error = 3
};

/// One line of structured output.
struct Record
{
    std::string metric;
    std::string family;
    unsigned processors = 0;
    std::string value;
    std::string unit;

    nlohmann::json to_json() const;
    static Record from_json(const nlohmann::json& j);
    friend bool operator==(const Record&, const Record&) = default;
};

/// Parses line-delimited records; throws on malformed lines.
std::vector<Record> parse_records(const std::string& text);

/// Runs the command line (args exclude the program name) and returns the exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
}  // namespace elnet::cli
