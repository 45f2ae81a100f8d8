#include "treeforge/path_contexts.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "treeforge/random.hpp"
#include "treeforge/subtokens.hpp"

namespace treeforge {
namespace {

struct LeafPath {
  const AstNode* leaf;
  std::vector<const AstNode*> ancestors;  // root .. parent
  std::vector<std::size_t> branch;        // branch[k] = child index taken below ancestors[k]
};

void collect(const AstNode& node, std::vector<const AstNode*>& ancestors,
             std::vector<std::size_t>& branch, std::vector<LeafPath>& out) {
  if (node.is_leaf()) {
    if (node.has_token() && !ancestors.empty()) out.push_back({&node, ancestors, branch});
    return;
  }
  ancestors.push_back(&node);
  for (std::size_t i = 0; i < node.children.size(); ++i) {
    branch.push_back(i);
    collect(node.children[i], ancestors, branch, out);
    branch.pop_back();
  }
  ancestors.pop_back();
}

std::vector<LeafPath> ordered_leaves(const AstNode& tree) {
  std::vector<LeafPath> out;
  std::vector<const AstNode*> ancestors;
  std::vector<std::size_t> branch;
  collect(tree, ancestors, branch, out);
  const bool all_ranged =
      std::all_of(out.begin(), out.end(), [](const LeafPath& p) { return p.leaf->range.has_value(); });
  if (all_ranged) {
    std::stable_sort(out.begin(), out.end(), [](const LeafPath& a, const LeafPath& b) {
      return std::pair{a.leaf->range->start_line, a.leaf->range->start_column} <
             std::pair{b.leaf->range->start_line, b.leaf->range->start_column};
    });
  }
  return out;
}

}  // namespace

void PathParams::validate() const {
  if (max_length <= 0 || max_width <= 0 || max_contexts <= 0) {
    throw std::invalid_argument("path context parameters must be positive");
  }
}

std::vector<std::string> leaf_subtokens(const std::string& token) {
  auto parts = split_subtokens(token);
  if (parts.empty()) parts.push_back(token);
  return parts;
}

std::vector<PathContext> extract_all_path_contexts(const AstNode& tree, const PathParams& params) {
  params.validate();
  const auto leaves = ordered_leaves(tree);
  std::vector<std::vector<std::string>> subtokens;
  subtokens.reserve(leaves.size());
  for (const auto& l : leaves) subtokens.push_back(leaf_subtokens(*l.leaf->token));

  std::vector<PathContext> out;
  for (std::size_t i = 0; i < leaves.size(); ++i) {
    const LeafPath& a = leaves[i];
    for (std::size_t j = i + 1; j < leaves.size(); ++j) {
      const LeafPath& b = leaves[j];
      std::size_t common = 0;
      while (common < a.ancestors.size() && common < b.ancestors.size() &&
             a.ancestors[common] == b.ancestors[common]) {
        ++common;
      }
      const std::size_t lca = common - 1;  // both chains start at the root
      const std::size_t length = (a.ancestors.size() - lca) + (b.ancestors.size() - 1 - lca);
      if (length > static_cast<std::size_t>(params.max_length)) continue;
      const auto ba = static_cast<long long>(a.branch[lca]);
      const auto bb = static_cast<long long>(b.branch[lca]);
      if (std::llabs(ba - bb) > params.max_width) continue;

      PathContext ctx;
      ctx.start_subtokens = subtokens[i];
      ctx.end_subtokens = subtokens[j];
      ctx.path_types.reserve(length);
      for (std::size_t k = a.ancestors.size(); k-- > lca;) {
        ctx.path_types.push_back(a.ancestors[k]->type_label);
      }
      for (std::size_t k = lca + 1; k < b.ancestors.size(); ++k) {
        ctx.path_types.push_back(b.ancestors[k]->type_label);
      }
      out.push_back(std::move(ctx));
    }
  }
  return out;
}

std::vector<PathContext> extract_path_contexts(const AstNode& tree, const PathParams& params) {
  auto all = extract_all_path_contexts(tree, params);
  const auto cap = static_cast<std::size_t>(params.max_contexts);
  if (all.size() <= cap) return all;

  std::vector<std::size_t> order(all.size());
  std::iota(order.begin(), order.end(), 0);
  SplitMix64 rng(params.sample_seed);
  for (std::size_t i = 0; i < cap; ++i) {
    const std::size_t pick = i + uniform_index(rng, order.size() - i);
    std::swap(order[i], order[pick]);
  }
  order.resize(cap);
  std::sort(order.begin(), order.end());

  std::vector<PathContext> sampled;
  sampled.reserve(cap);
  for (const std::size_t idx : order) sampled.push_back(std::move(all[idx]));
  return sampled;
}

}  // namespace treeforge
