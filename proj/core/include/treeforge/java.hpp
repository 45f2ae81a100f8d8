#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "treeforge/ast.hpp"

namespace treeforge::java {

class SyntaxError : public std::runtime_error {
 public:
  SyntaxError(int line, int column, const std::string& what)
      : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}

  [[nodiscard]] int line() const noexcept { return line_; }
  [[nodiscard]] int column() const noexcept { return column_; }

 private:
  int line_;
  int column_;
};

/// Parses a Java compilation unit (Java 17 surface, minus modules) into the
/// universal tree form. Node labels follow the JavaParser naming scheme
/// (CompilationUnit, MethodDeclaration, SimpleName, ...). Operators and
/// qualified-name segments are stored as tokens on internal nodes.
///
/// Throws SyntaxError on malformed input.
AstNode parse(std::string_view source);

}  // namespace treeforge::java
