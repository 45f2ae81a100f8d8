#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace treeforge {

/// A span of source text. Lines are 1-based, columns are 0-based byte
/// offsets within the line; the end column is exclusive.
struct SourceRange {
  int start_line = 1;
  int start_column = 0;
  int end_line = 1;
  int end_column = 0;

  auto operator<=>(const SourceRange&) const = default;

  [[nodiscard]] bool valid() const noexcept {
    return start_line >= 1 && end_line >= 1 && start_column >= 0 &&
           end_column >= 0 &&
           std::pair{start_line, start_column} <= std::pair{end_line, end_column};
  }

  /// True when `inner` lies within this range (inclusive bounds).
  [[nodiscard]] bool contains(const SourceRange& inner) const noexcept {
    return std::pair{start_line, start_column} <=
               std::pair{inner.start_line, inner.start_column} &&
           std::pair{inner.end_line, inner.end_column} <=
               std::pair{end_line, end_column};
  }
};

/// Universal parser-independent tree node. Internal nodes stand for grammar
/// abstractions, leaves normally carry the code tokens.
struct AstNode {
  std::string type_label;
  std::optional<std::string> token;
  std::optional<SourceRange> range;
  std::vector<AstNode> children;

  AstNode() = default;
  explicit AstNode(std::string type, std::optional<std::string> tok = std::nullopt,
                   std::optional<SourceRange> rng = std::nullopt)
      : type_label(std::move(type)), token(std::move(tok)), range(rng) {}

  [[nodiscard]] bool is_leaf() const noexcept { return children.empty(); }
  [[nodiscard]] bool has_token() const noexcept { return token && !token->empty(); }

  AstNode& add(AstNode child) {
    children.push_back(std::move(child));
    return children.back();
  }

  /// Structural equality: labels, tokens, ranges and child order.
  friend bool operator==(const AstNode&, const AstNode&) = default;
};

/// Visits every node in pre-order, left to right.
template <typename Fn>
void for_each_node(const AstNode& root, Fn&& fn) {
  std::vector<const AstNode*> stack{&root};
  while (!stack.empty()) {
    const AstNode* node = stack.back();
    stack.pop_back();
    fn(*node);
    for (auto it = node->children.rbegin(); it != node->children.rend(); ++it) {
      stack.push_back(&*it);
    }
  }
}

/// Leaves in left-to-right traversal order.
std::vector<const AstNode*> leaves(const AstNode& root);

/// Tokens of all leaves that carry a non-empty token, in leaf order.
std::vector<std::string> leaf_tokens(const AstNode& root);

}  // namespace treeforge
