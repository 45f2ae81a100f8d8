#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace treeforge::java {

enum class TokenKind : std::uint8_t {
  kIdentifier,
  kKeyword,
  kIntLiteral,
  kLongLiteral,
  kFloatLiteral,
  kCharLiteral,
  kStringLiteral,
  kTextBlock,
  kOperator,
  kEnd,
};

struct Position {
  int line = 1;
  int column = 0;
  friend bool operator==(const Position&, const Position&) = default;
};

struct Token {
  TokenKind kind = TokenKind::kEnd;
  std::string text;  // literals keep their quotes
  Position begin;
  Position end;
};

/// Splits Java source into tokens, dropping whitespace and comments. `>` is
/// always emitted as a single character token; the parser reassembles shift
/// and comparison operators from adjacent tokens so that nested generic
/// arguments close cleanly. Throws SyntaxError on unterminated literals or
/// comments and on stray characters.
std::vector<Token> tokenize(std::string_view source);

bool is_keyword(std::string_view word);

}  // namespace treeforge::java
