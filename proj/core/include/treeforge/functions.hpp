#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "treeforge/ast.hpp"
#include "treeforge/label_mapping.hpp"
#include "treeforge/parser.hpp"

namespace treeforge {

struct Parameter {
  std::string name;
  std::string type;

  friend bool operator==(const Parameter&, const Parameter&) = default;
};

/// Language-agnostic description of one extracted method or constructor.
struct FunctionInfo {
  std::string name;
  std::vector<std::string> name_subtokens;
  std::vector<std::string> modifiers;
  std::vector<std::string> annotations;
  bool is_constructor = false;
  std::vector<Parameter> parameters;
  AstNode body;  // the whole declaration subtree
  SourceRange range;
  std::string file_path;
  /// Child-index path from `body` to the declaration's name node.
  std::vector<std::size_t> name_path;
  /// Size of the statement block, 0 for bodiless (abstract/interface) methods.
  std::size_t body_size = 0;
};

struct SplitResult {
  std::vector<FunctionInfo> functions;
  std::vector<SkipEvent> skips;
};

/// One record per method/constructor declaration in document order. Nested and
/// local declarations yield their own records and also stay inside their
/// enclosing body. A declaration without a resolvable name is skipped alone.
SplitResult split_functions(const AstNode& file_tree, const LabelMapping& mapping,
                            std::string_view file_path = {});
SplitResult split_functions(const AstNode& file_tree, std::string_view language_id,
                            std::string_view file_path = {});

}  // namespace treeforge
