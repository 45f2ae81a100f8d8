#include "treeforge/ast.hpp"

namespace treeforge {

std::vector<const AstNode*> leaves(const AstNode& root) {
  std::vector<const AstNode*> out;
  for_each_node(root, [&](const AstNode& n) {
    if (n.is_leaf()) out.push_back(&n);
  });
  return out;
}

std::vector<std::string> leaf_tokens(const AstNode& root) {
  std::vector<std::string> out;
  for_each_node(root, [&](const AstNode& n) {
    if (n.is_leaf() && n.has_token()) out.push_back(*n.token);
  });
  return out;
}

}  // namespace treeforge
