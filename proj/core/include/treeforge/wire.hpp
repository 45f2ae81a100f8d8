#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "treeforge/ast.hpp"

namespace treeforge {

/// Violation of the JSON tree schema shared by foreign parsers and the JSONL
/// dataset format.
class WireError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using OrderedJson = nlohmann::ordered_json;

/// {"typeLabel", "token", "range", "children"} in that key order.
OrderedJson to_wire(const AstNode& node);
OrderedJson range_to_wire(const std::optional<SourceRange>& range);

/// Strict conversion: every key required, no extra keys, typeLabel non-empty.
AstNode from_wire(const nlohmann::json& value);
AstNode from_wire(const OrderedJson& value);
std::optional<SourceRange> range_from_wire(const nlohmann::json& value);

/// Parses a single JSON document and converts it.
AstNode parse_wire_document(std::string_view text);

/// Checks that every present range is well formed, lies inside its parent's
/// range and that sibling ranges do not overlap. Returns a description of the
/// first violation.
std::optional<std::string> check_ranges(const AstNode& root);

}  // namespace treeforge
