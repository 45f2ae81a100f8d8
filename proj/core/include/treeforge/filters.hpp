#pragma once

#include <bitset>
#include <optional>
#include <string_view>
#include <vector>

#include "treeforge/config.hpp"
#include "treeforge/functions.hpp"
#include "treeforge/sample.hpp"

namespace treeforge {

struct FilterVerdict {
  bool keep = true;
  std::optional<FilterKind> rejected_by;  // first rejecting filter
};

/// Evaluates `filters` in order and stops at the first rejection. Tree limits
/// look at sample.tree; label filters at the label; the remaining filters need
/// `info` and pass when it is null (file-granularity samples).
FilterVerdict apply_filters(const LabeledSample& sample, const FunctionInfo* info,
                            const std::vector<FilterSpec>& filters);

/// Byte set described by a character class body such as "A-Za-z0-9_".
/// A '-' at either end is literal; '\' escapes the next character.
std::bitset<256> parse_charset(std::string_view spec);

/// True when every byte of `label` is in the set; an empty label passes.
bool label_in_charset(std::string_view label, std::string_view spec);

}  // namespace treeforge
