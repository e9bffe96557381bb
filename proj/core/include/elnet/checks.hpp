// elnet: Elliptic-net pairings
// Copyright 2026 The elnet Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <elnet/curves.hpp>
#include <elnet/ellnet.hpp>
#include <json.hpp>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace elnet
{
/// Stored values W(u, v) for lo <= u <= hi and v in {-1, 0, 1}.
struct NetTable
{
    Int lo, hi;
    std::vector<Fe> w0, w1, wm1;

    bool contains(const Int& u, int v) const { return u >= lo && u <= hi && v >= -1 && v <= 1; }
    const Fe& at(const Int& u, int v) const;
    Fe& at(const Int& u, int v);

    /// Net of (twist, Q~, untwist(P)) for the instance's generators.
    static NetTable of_instance(const CurveInstance& inst, long lo, long hi);
    nlohmann::json to_json() const;
    static NetTable from_json(const Tower& t, const nlohmann::json& j);
};

/// Instance plus an optional stored net, as written by `elnet fixture`.
struct Fixture
{
    CurveInstance instance;
    std::optional<NetTable> net;

    nlohmann::json to_json() const;
    static Fixture from_json(const nlohmann::json& j);
    static Fixture load(const std::string& path);
};

struct CheckOptions
{
    unsigned samples = 500;  ///< recurrence tuples
    unsigned psi_max = 50;
    unsigned transport_max = 20;
    unsigned scalars = 20;   ///< bilinearity
    unsigned blocks = 100;   ///< parallel/sequential
    unsigned long seed = 0xc0ffee;
};

struct CheckResult
{
    std::string name;
    Family family;
    bool pass = false;
    std::string detail;
};

/// "recurrence", "modified-recurrence", "division-polynomial", "twist-transport",
/// "line-intermediates", "net-miller", "tate", "bilinearity", "parallel-sequential".
const std::vector<std::string_view>& check_names();

/// Runs one named check; throws UsageError for unknown names. Errors raised by the
/// computation are reported as failures.
CheckResult run_check(std::string_view name, const Fixture& fx, const CheckOptions& opt = {});

/// Recurrence over tuples whose indices stay inside the table.
CheckResult check_table_recurrence(const NetTable& t, Family f, const CheckOptions& opt = {});
}  // namespace elnet
