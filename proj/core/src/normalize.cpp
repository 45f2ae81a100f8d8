#include "treeforge/normalize.hpp"

namespace treeforge {
namespace {

AstNode hoist(const AstNode& node) {
  AstNode out(node.type_label, node.is_leaf() ? node.token : std::nullopt, node.range);
  out.children.reserve(node.children.size() + 1);
  for (const auto& child : node.children) out.children.push_back(hoist(child));
  if (!node.is_leaf() && node.has_token()) {
    out.add(AstNode(std::string(kHoistedTokenLabel), node.token));
  }
  return out;
}

AstNode compress(const AstNode& node) {
  const AstNode* deepest = &node;
  std::string label = node.type_label;
  std::optional<SourceRange> range = node.range;
  while (deepest->children.size() == 1 && !deepest->children.front().is_leaf()) {
    deepest = &deepest->children.front();
    label.append(kBambooSeparator);
    label.append(deepest->type_label);
    // Shallowest member's range wins; deeper ones only fill a missing range.
    if (!range) range = deepest->range;
  }
  AstNode out(std::move(label), deepest->token, range);
  out.children.reserve(deepest->children.size());
  for (const auto& child : deepest->children) out.children.push_back(compress(child));
  return out;
}

}  // namespace

AstNode hoist_tokens(const AstNode& root) { return hoist(root); }

AstNode compress_bamboo(const AstNode& root) { return compress(root); }

AstNode normalize(const AstNode& root) { return compress(hoist(root)); }

bool is_normalized(const AstNode& root) {
  bool ok = true;
  for_each_node(root, [&](const AstNode& n) {
    if (n.is_leaf()) return;
    if (n.has_token()) ok = false;
    if (n.children.size() == 1 && !n.children.front().is_leaf()) ok = false;
  });
  return ok;
}

}  // namespace treeforge
