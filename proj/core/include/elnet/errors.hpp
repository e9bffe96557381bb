// elnet: Elliptic-net pairings
// Copyright 2026 The elnet Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace elnet
{
/// Caller broke an API contract (level mismatch, bad argument).
struct UsageError : std::invalid_argument
{
    using std::invalid_argument::invalid_argument;
};

/// A configuration document or parameter set is invalid.
struct ConfigError : std::runtime_error
{
    using std::runtime_error::runtime_error;
};

/// Attempt to invert zero.
struct ZeroInversion : std::domain_error
{
    using std::domain_error::domain_error;
};

/// A point or net constant degenerated (zero denominator, coincident points).
struct NotOnCurve : std::domain_error
{
    using std::domain_error::domain_error;
};

struct DegeneracyError : std::runtime_error
{
    using std::runtime_error::runtime_error;
};

/// A cost expression references an entry that the cost table does not price.
struct UnpricedEntry : std::runtime_error
{
    explicit UnpricedEntry(const std::string& entry)
      : std::runtime_error("unpriced cost entry " + entry), name{entry}
    {}
    std::string name;
};

/// A schedule failed validation.
struct ScheduleError : std::runtime_error
{
    using std::runtime_error::runtime_error;
};
}  // namespace elnet
