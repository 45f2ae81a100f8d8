#pragma once

#include <string_view>

#include "treeforge/ast.hpp"

namespace treeforge {

/// Type label given to the leaf that receives a token moved off an internal node.
inline constexpr std::string_view kHoistedTokenLabel = "<HOISTED_TOKEN>";
/// Separator used when the type labels of a compressed chain are concatenated.
inline constexpr std::string_view kBambooSeparator = "|";

/// Moves every token carried by a non-leaf node into a fresh leaf appended as
/// that node's last child. Empty tokens on internal nodes are simply dropped.
AstNode hoist_tokens(const AstNode& root);

/// Collapses every chain of internal nodes that each have exactly one internal
/// child into a single node. The merged node joins the type labels root-first,
/// keeps the shallowest member's range and takes the deepest member's token and
/// children. Leaves are never merged into their parent.
AstNode compress_bamboo(const AstNode& root);

/// compress_bamboo(hoist_tokens(root)).
AstNode normalize(const AstNode& root);

/// True when no internal node carries a token and no internal node has exactly
/// one child that is itself internal.
bool is_normalized(const AstNode& root);

}  // namespace treeforge
