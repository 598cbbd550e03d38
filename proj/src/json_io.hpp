// Copyright (c) feqn contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <string_view>

#include <json.hpp>

namespace feqn::detail {

struct SourcePos {
    std::size_t line = 1;
    std::size_t column = 1;
};

/// A parsed JSON document plus the source position of every value, keyed by JSON pointer.
struct ParsedDocument {
    nlohmann::json value;
    std::map<std::string, SourcePos> positions;
};

/// Throws Error(Parse) with line and column on malformed input or duplicate keys.
ParsedDocument parse_document(std::string_view text);

}  // namespace feqn::detail
