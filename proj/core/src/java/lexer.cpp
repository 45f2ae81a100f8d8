#include "java/lexer.hpp"

#include <algorithm>
#include <array>

#include "treeforge/java.hpp"

namespace treeforge::java {
namespace {

constexpr std::array<std::string_view, 53> kKeywords = {
    "abstract", "assert",     "boolean",   "break",     "byte",      "case",
    "catch",    "char",       "class",     "const",     "continue",  "default",
    "do",       "double",     "else",      "enum",      "extends",   "final",
    "finally",  "float",      "for",       "goto",      "if",        "implements",
    "import",   "instanceof", "int",       "interface", "long",      "native",
    "new",      "package",    "private",   "protected", "public",    "return",
    "short",    "static",     "strictfp",  "super",     "switch",    "synchronized",
    "this",     "throw",      "throws",    "transient", "try",       "void",
    "volatile", "while",      "true",      "false",     "null"};

// Longest first so that a prefix never shadows a longer operator. `>` forms
// are deliberately absent.
constexpr std::array<std::string_view, 20> kMultiCharOperators = {
    "<<=", "...", "->", "::", "++", "--", "&&", "||", "==", "!=",
    "<=",  "<<",  "+=", "-=", "*=", "/=", "%=", "&=", "|=", "^="};

constexpr std::string_view kSingleCharOperators = "(){}[];,.=<>!~?:+-*/&|^%@";

bool ident_start(unsigned char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_' || c == '$' || c >= 0x80;
}

bool ident_part(unsigned char c) { return ident_start(c) || (c >= '0' && c <= '9'); }

bool digit(unsigned char c) { return c >= '0' && c <= '9'; }

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip_trivia();
      if (at_end()) {
        out.push_back(Token{TokenKind::kEnd, "", here(), here()});
        return out;
      }
      out.push_back(next());
    }
  }

 private:
  [[nodiscard]] bool at_end() const { return i_ >= src_.size(); }
  [[nodiscard]] unsigned char peek(std::size_t k = 0) const {
    return i_ + k < src_.size() ? static_cast<unsigned char>(src_[i_ + k]) : 0;
  }
  [[nodiscard]] Position here() const { return pos_; }

  void advance() {
    if (at_end()) return;
    if (src_[i_] == '\n') {
      ++pos_.line;
      pos_.column = 0;
    } else {
      ++pos_.column;
    }
    ++i_;
  }

  [[noreturn]] void fail(const Position& at, const std::string& what) const {
    throw SyntaxError(at.line, at.column, what);
  }

  void skip_trivia() {
    while (!at_end()) {
      const unsigned char c = peek();
      if (c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f') {
        advance();
      } else if (c == '/' && peek(1) == '/') {
        while (!at_end() && peek() != '\n') advance();
      } else if (c == '/' && peek(1) == '*') {
        const Position start = here();
        advance();
        advance();
        while (!(peek() == '*' && peek(1) == '/')) {
          if (at_end()) fail(start, "unterminated comment");
          advance();
        }
        advance();
        advance();
      } else {
        return;
      }
    }
  }

  Token make(TokenKind kind, std::size_t from, Position begin) const {
    return Token{kind, std::string(src_.substr(from, i_ - from)), begin, here()};
  }

  Token next() {
    const Position begin = here();
    const std::size_t from = i_;
    const unsigned char c = peek();

    if (ident_start(c)) {
      while (!at_end() && ident_part(peek())) advance();
      Token t = make(TokenKind::kIdentifier, from, begin);
      if (is_keyword(t.text)) t.kind = TokenKind::kKeyword;
      return t;
    }
    if (digit(c) || (c == '.' && digit(peek(1)))) return number(from, begin);
    if (c == '"') {
      if (peek(1) == '"' && peek(2) == '"') return text_block(from, begin);
      return quoted('"', TokenKind::kStringLiteral, from, begin);
    }
    if (c == '\'') return quoted('\'', TokenKind::kCharLiteral, from, begin);

    if (c == '>') {
      advance();
      return make(TokenKind::kOperator, from, begin);
    }
    for (std::string_view op : kMultiCharOperators) {
      if (src_.substr(i_, op.size()) == op) {
        for (std::size_t k = 0; k < op.size(); ++k) advance();
        return make(TokenKind::kOperator, from, begin);
      }
    }
    if (kSingleCharOperators.find(static_cast<char>(c)) != std::string_view::npos) {
      advance();
      return make(TokenKind::kOperator, from, begin);
    }
    fail(begin, std::string("unexpected character '") + static_cast<char>(c) + "'");
  }

  Token number(std::size_t from, Position begin) {
    const bool hex = peek() == '0' && (peek(1) == 'x' || peek(1) == 'X');
    bool fractional = false;
    bool exponent = false;
    while (!at_end()) {
      const unsigned char c = peek();
      if (ident_part(c) && c < 0x80) {
        const bool exp_marker = hex ? (c == 'p' || c == 'P') : (c == 'e' || c == 'E');
        advance();
        if (exp_marker) {
          exponent = true;
          if (peek() == '+' || peek() == '-') advance();
        }
      } else if (c == '.' && digit(peek(1))) {
        fractional = true;
        advance();
      } else if (c == '.' && !fractional && !exponent && !ident_start(peek(1))) {
        // "1." is a valid double literal; "1.foo" is not a number continuation.
        fractional = true;
        advance();
      } else {
        break;
      }
    }
    Token t = make(TokenKind::kIntLiteral, from, begin);
    const char last = t.text.back();
    if (last == 'l' || last == 'L') {
      t.kind = TokenKind::kLongLiteral;
    } else if (fractional || exponent ||
               (!hex && (last == 'f' || last == 'F' || last == 'd' || last == 'D'))) {
      t.kind = TokenKind::kFloatLiteral;
    }
    return t;
  }

  Token quoted(char quote, TokenKind kind, std::size_t from, Position begin) {
    advance();
    while (peek() != static_cast<unsigned char>(quote)) {
      if (at_end() || peek() == '\n') fail(begin, "unterminated literal");
      if (peek() == '\\') advance();
      advance();
    }
    advance();
    return make(kind, from, begin);
  }

  Token text_block(std::size_t from, Position begin) {
    advance();
    advance();
    advance();
    while (!(peek() == '"' && peek(1) == '"' && peek(2) == '"')) {
      if (at_end()) fail(begin, "unterminated text block");
      if (peek() == '\\') advance();
      advance();
    }
    advance();
    advance();
    advance();
    return make(TokenKind::kTextBlock, from, begin);
  }

  std::string_view src_;
  std::size_t i_ = 0;
  Position pos_;
};

}  // namespace

bool is_keyword(std::string_view word) {
  return std::find(kKeywords.begin(), kKeywords.end(), word) != kKeywords.end();
}

std::vector<Token> tokenize(std::string_view source) { return Lexer(source).run(); }

}  // namespace treeforge::java
