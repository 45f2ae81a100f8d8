#pragma once

#include <string>
#include <string_view>

#include "treeforge/ast.hpp"
#include "treeforge/config.hpp"
#include "treeforge/functions.hpp"

namespace treeforge {

struct ExtractedLabel {
  std::string label;
  AstNode tree;
};

/// Replaces the name at the declaration site of `info` with kMethodNameStub.
/// Only nodes inside the name node's subtree whose token equals the method
/// name are touched, unless `mask_call_sites` also asks for every other leaf
/// spelling the name.
AstNode mask_method_name(const FunctionInfo& info, bool mask_call_sites = false);

/// method_name: the function's name and its masked declaration.
/// file_name / folder_name: a label derived from info.file_path and the
/// declaration unchanged.
ExtractedLabel extract_label(const FunctionInfo& info, LabelExtractor extractor,
                             bool mask_call_sites = false);

/// "src/util/Foo.java" -> "Foo".
std::string file_name_label(std::string_view file_path);
/// "src/util/Foo.java" -> "util"; empty for a file at the corpus root.
std::string folder_name_label(std::string_view file_path);

}  // namespace treeforge
