// elnet: Elliptic-net pairings
// Copyright 2026 The elnet Authors.
// SPDX-License-Identifier: Apache-2.0

#include <elnet/data.hpp>
#include <elnet/errors.hpp>
#include <elnet_embedded_data.hpp>
#include <map>
#include <mutex>
#include <string>

namespace elnet::data
{
namespace
{
const std::map<std::string_view, std::string_view>& table()
{
    static const std::map<std::string_view, std::string_view> t{
        {"cost_table", embedded::cost_table},
        {"expected_costs", embedded::expected_costs},
        {"schedule_double4", embedded::schedule_double4},
        {"schedule_add4", embedded::schedule_add4},
        {"schedule_double8", embedded::schedule_double8},
        {"schedule_add8", embedded::schedule_add8},
    };
    return t;
}
}  // namespace

const std::vector<std::string_view>& document_names()
{
    static const std::vector<std::string_view> names = [] {
        std::vector<std::string_view> v;
        for (const auto& [k, _] : table())
            v.push_back(k);
        return v;
    }();
    return names;
}

std::string_view text(std::string_view name)
{
    const auto it = table().find(name);
    if (it == table().end())
        throw ConfigError{"no embedded document named " + std::string{name}};
    return it->second;
}

const nlohmann::json& document(std::string_view name)
{
    static std::mutex mu;
    static std::map<std::string, nlohmann::json, std::less<>> cache;
    std::lock_guard lock{mu};
    auto it = cache.find(name);
    if (it == cache.end())
    {
        try
        {
            it = cache.emplace(std::string{name}, nlohmann::json::parse(text(name))).first;
        }
        catch (const nlohmann::json::exception& e)
        {
            throw ConfigError{"embedded document " + std::string{name} + ": " + e.what()};
        }
    }
    return it->second;
}
}  // namespace elnet::data
