#include "treeforge/functions.hpp"

#include "treeforge/metrics.hpp"
#include "treeforge/subtokens.hpp"

namespace treeforge {
namespace {

std::string subtree_text(const AstNode& node) {
  std::vector<std::string> parts;
  for_each_node(node, [&](const AstNode& n) {
    if (n.has_token()) parts.push_back(*n.token);
  });
  return join(parts, " ");
}

const AstNode* first_child_in(const AstNode& node, const LabelMapping::LabelSet& labels,
                              std::size_t* index = nullptr) {
  for (std::size_t i = 0; i < node.children.size(); ++i) {
    if (labels.contains(node.children[i].type_label)) {
      if (index) *index = i;
      return &node.children[i];
    }
  }
  return nullptr;
}

class Splitter {
 public:
  Splitter(const LabelMapping& mapping, std::string_view file_path)
      : mapping_(mapping), file_path_(file_path) {}

  void visit(const AstNode& node, const SourceRange& fallback) {
    const SourceRange here = node.range.value_or(fallback);
    if (mapping_.is_function(node.type_label)) extract(node, here);
    for (const auto& child : node.children) visit(child, here);
  }

  SplitResult result;

 private:
  void extract(const AstNode& decl, const SourceRange& range) {
    std::size_t name_index = 0;
    const AstNode* name = first_child_in(decl, mapping_.name, &name_index);
    if (!name || !name->has_token()) {
      result.skips.push_back(
          SkipEvent{file_path_, decl.type_label + " without a resolvable name", range});
      return;
    }

    FunctionInfo info;
    info.name = *name->token;
    info.name_subtokens = split_subtokens(info.name);
    info.is_constructor = mapping_.constructor_declaration.contains(decl.type_label);
    info.range = range;
    info.file_path = file_path_;
    info.name_path = {name_index};

    for (const auto& child : decl.children) {
      if (mapping_.modifier.contains(child.type_label) && child.has_token()) {
        info.modifiers.push_back(*child.token);
      } else if (mapping_.annotation.contains(child.type_label)) {
        if (const AstNode* n = first_child_in(child, mapping_.annotation_name); n && n->has_token()) {
          info.annotations.push_back(*n->token);
        }
      } else if (mapping_.parameter.contains(child.type_label)) {
        Parameter p;
        if (const AstNode* n = first_child_in(child, mapping_.name); n && n->token) p.name = *n->token;
        if (const AstNode* t = first_child_in(child, mapping_.type)) p.type = subtree_text(*t);
        info.parameters.push_back(std::move(p));
      } else if (mapping_.body.contains(child.type_label)) {
        info.body_size = tree_size(child);
      }
    }
    info.body = decl;
    result.functions.push_back(std::move(info));
  }

  const LabelMapping& mapping_;
  std::string file_path_;
};

}  // namespace

SplitResult split_functions(const AstNode& file_tree, const LabelMapping& mapping,
                            std::string_view file_path) {
  Splitter splitter(mapping, file_path);
  splitter.visit(file_tree, file_tree.range.value_or(SourceRange{}));
  return std::move(splitter.result);
}

SplitResult split_functions(const AstNode& file_tree, std::string_view language_id,
                            std::string_view file_path) {
  return split_functions(file_tree, builtin_label_mapping(language_id), file_path);
}

}  // namespace treeforge
