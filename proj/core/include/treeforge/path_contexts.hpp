#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "treeforge/ast.hpp"

namespace treeforge {

/// Leaf-to-leaf path: start leaf subtokens, the type labels of the nodes on the
/// path (start leaf's parent up to the lowest common ancestor and down to the
/// end leaf's parent, LCA once), end leaf subtokens.
struct PathContext {
  std::vector<std::string> start_subtokens;
  std::vector<std::string> path_types;
  std::vector<std::string> end_subtokens;

  auto operator<=>(const PathContext&) const = default;
};

struct PathParams {
  int max_length = 8;     // max number of nodes in path_types
  int max_width = 2;      // max child-index distance under the LCA
  int max_contexts = 200;  // cap per tree; sampled when exceeded
  std::uint64_t sample_seed = 0;

  /// Throws std::invalid_argument unless every field is positive.
  void validate() const;
};

/// Subtokens a leaf contributes; tokens that split to nothing (operators,
/// punctuation) contribute themselves unchanged.
std::vector<std::string> leaf_subtokens(const std::string& token);

/// All pairs of tokened leaves (i < j in leaf order) passing the length and
/// width limits. When more than max_contexts qualify, a uniform subset of
/// max_contexts is drawn with sample_seed; the survivors keep their order.
std::vector<PathContext> extract_path_contexts(const AstNode& tree, const PathParams& params);

/// Same as above but never caps.
std::vector<PathContext> extract_all_path_contexts(const AstNode& tree, const PathParams& params);

}  // namespace treeforge
