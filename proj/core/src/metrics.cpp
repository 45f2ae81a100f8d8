#include "treeforge/metrics.hpp"

#include <set>
#include <string>
#include <utility>
#include <vector>

#include "treeforge/subtokens.hpp"

namespace treeforge {

std::size_t tree_size(const AstNode& root) {
  std::size_t count = 0;
  for_each_node(root, [&](const AstNode&) { ++count; });
  return count;
}

std::size_t tree_depth(const AstNode& root) {
  std::size_t deepest = 0;
  std::vector<std::pair<const AstNode*, std::size_t>> stack{{&root, 1}};
  while (!stack.empty()) {
    auto [node, depth] = stack.back();
    stack.pop_back();
    if (depth > deepest) deepest = depth;
    for (const auto& child : node->children) stack.emplace_back(&child, depth + 1);
  }
  return deepest;
}

double branching_factor(const AstNode& root) {
  std::size_t internal = 0;
  std::size_t edges = 0;
  for_each_node(root, [&](const AstNode& n) {
    if (!n.is_leaf()) {
      ++internal;
      edges += n.children.size();
    }
  });
  if (internal == 0) throw MetricError("no internal nodes");
  return static_cast<double>(edges) / static_cast<double>(internal);
}

std::size_t unique_types(const AstNode& root) {
  std::set<std::string_view> types;
  for_each_node(root, [&](const AstNode& n) {
    if (!n.is_leaf()) types.insert(n.type_label);
  });
  return types.size();
}

std::size_t unique_tokens(const AstNode& root) {
  std::set<std::string> subtokens;
  for_each_node(root, [&](const AstNode& n) {
    if (n.is_leaf() && n.has_token()) {
      for (auto& s : split_subtokens(*n.token)) subtokens.insert(std::move(s));
    }
  });
  return subtokens.size();
}

TreeMetrics compute_metrics(const AstNode& root) {
  TreeMetrics m;
  std::size_t internal = 0;
  std::size_t edges = 0;
  std::set<std::string_view> types;
  std::set<std::string> subtokens;

  std::vector<std::pair<const AstNode*, std::size_t>> stack{{&root, 1}};
  while (!stack.empty()) {
    auto [node, depth] = stack.back();
    stack.pop_back();
    ++m.tree_size;
    if (depth > m.tree_depth) m.tree_depth = depth;
    if (node->is_leaf()) {
      if (node->has_token()) {
        for (auto& s : split_subtokens(*node->token)) subtokens.insert(std::move(s));
      }
      continue;
    }
    ++internal;
    edges += node->children.size();
    types.insert(node->type_label);
    for (const auto& child : node->children) stack.emplace_back(&child, depth + 1);
  }
  if (internal > 0) {
    m.branching_factor = static_cast<double>(edges) / static_cast<double>(internal);
  }
  m.unique_types = types.size();
  m.unique_tokens = subtokens.size();
  return m;
}

}  // namespace treeforge
