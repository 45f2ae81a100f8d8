#pragma once

#include <string>
#include <vector>

#include "treeforge/ast.hpp"

namespace treeforge {

/// Placeholder written over the declaration-site method name.
inline constexpr std::string_view kMethodNameStub = "METHOD_NAME";

/// One dataset record.
struct LabeledSample {
  std::string label;
  std::vector<std::string> label_subtokens;
  AstNode tree;
  std::string file_path;  // corpus-relative, "/"-separated
  SourceRange range;
  std::string parser_id;
  bool normalized = false;

  friend bool operator==(const LabeledSample&, const LabeledSample&) = default;
};

}  // namespace treeforge
