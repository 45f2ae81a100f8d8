#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>

#include "treeforge/ast.hpp"

namespace treeforge {

class MetricError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Tree characteristics used to compare parsers.
std::size_t tree_size(const AstNode& root);
std::size_t tree_depth(const AstNode& root);
/// Mean child count over non-leaf nodes. Throws MetricError("no internal nodes")
/// for a single-node tree.
double branching_factor(const AstNode& root);
std::size_t unique_types(const AstNode& root);
std::size_t unique_tokens(const AstNode& root);

struct TreeMetrics {
  std::size_t tree_size = 0;
  std::size_t tree_depth = 0;
  std::optional<double> branching_factor;  // empty for a single-node tree
  std::size_t unique_types = 0;
  std::size_t unique_tokens = 0;
};

/// All five metrics in a single traversal.
TreeMetrics compute_metrics(const AstNode& root);

}  // namespace treeforge
