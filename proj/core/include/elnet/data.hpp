// elnet: Elliptic-net pairings
// Copyright 2026 The elnet Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <json.hpp>
#include <string_view>
#include <vector>

namespace elnet::data
{
/// Names of the documents compiled into the library.
const std::vector<std::string_view>& document_names();
/// Raw text of an embedded document; throws ConfigError for unknown names.
std::string_view text(std::string_view name);
/// Parsed document, cached for the process lifetime.
const nlohmann::json& document(std::string_view name);
}  // namespace elnet::data
