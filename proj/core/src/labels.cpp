#include "treeforge/labels.hpp"

#include <filesystem>

#include "treeforge/sample.hpp"

namespace treeforge {
namespace {

void mask_matching(AstNode& node, const std::string& name) {
  if (node.token && *node.token == name) node.token = std::string(kMethodNameStub);
  for (auto& child : node.children) mask_matching(child, name);
}

void mask_leaves(AstNode& node, const std::string& name) {
  if (node.is_leaf()) {
    if (node.token && *node.token == name) node.token = std::string(kMethodNameStub);
    return;
  }
  for (auto& child : node.children) mask_leaves(child, name);
}

}  // namespace

AstNode mask_method_name(const FunctionInfo& info, bool mask_call_sites) {
  AstNode tree = info.body;
  AstNode* name_node = &tree;
  for (const std::size_t index : info.name_path) {
    if (index >= name_node->children.size()) return tree;
    name_node = &name_node->children[index];
  }
  if (mask_call_sites) mask_leaves(tree, info.name);
  mask_matching(*name_node, info.name);
  return tree;
}

ExtractedLabel extract_label(const FunctionInfo& info, LabelExtractor extractor,
                             bool mask_call_sites) {
  switch (extractor) {
    case LabelExtractor::kMethodName:
      return {info.name, mask_method_name(info, mask_call_sites)};
    case LabelExtractor::kFileName:
      return {file_name_label(info.file_path), info.body};
    case LabelExtractor::kFolderName:
      return {folder_name_label(info.file_path), info.body};
  }
  return {info.name, info.body};
}

std::string file_name_label(std::string_view file_path) {
  return std::filesystem::path(file_path).stem().string();
}

std::string folder_name_label(std::string_view file_path) {
  return std::filesystem::path(file_path).parent_path().filename().string();
}

}  // namespace treeforge
