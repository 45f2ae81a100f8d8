#include <algorithm>
#include <array>
#include <string>
#include <utility>
#include <vector>

#include "java/lexer.hpp"
#include "treeforge/java.hpp"

namespace treeforge::java {
namespace {

constexpr std::array<std::string_view, 8> kPrimitiveTypes = {
    "boolean", "byte", "char", "short", "int", "long", "float", "double"};

constexpr std::array<std::string_view, 11> kMemberModifiers = {
    "public",    "protected", "private",   "static",       "abstract", "final",
    "native",    "synchronized", "transient", "volatile", "strictfp"};

constexpr std::array<std::string_view, 12> kAssignmentOperators = {
    "=", "+=", "-=", "*=", "/=", "%=", "&=", "|=", "^=", "<<=", ">>=", ">>>="};

template <std::size_t N>
bool contains(const std::array<std::string_view, N>& set, std::string_view word) {
  return std::find(set.begin(), set.end(), word) != set.end();
}

int binary_precedence(std::string_view op) {
  static constexpr std::array<std::pair<std::string_view, int>, 20> kTable = {{
      {"||", 1}, {"&&", 2}, {"|", 3},  {"^", 4},  {"&", 5},   {"==", 6}, {"!=", 6},
      {"<", 7},  {">", 7},  {"<=", 7}, {">=", 7}, {"instanceof", 7},     {"<<", 8},
      {">>", 8}, {">>>", 8}, {"+", 9}, {"-", 9},  {"*", 10},  {"/", 10}, {"%", 10},
  }};
  for (const auto& [name, prec] : kTable) {
    if (name == op) return prec;
  }
  return 0;
}

std::string strip_quotes(const Token& t) {
  const std::size_t q = t.kind == TokenKind::kTextBlock ? 3 : 1;
  if (t.text.size() < 2 * q) return t.text;
  return t.text.substr(q, t.text.size() - 2 * q);
}

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : toks_(std::move(tokens)) {}

  AstNode compilation_unit() {
    AstNode cu("CompilationUnit");

    const std::size_t before_package = pos_;
    std::vector<AstNode> annotations;
    while (at("@") && !at("interface", 1)) annotations.push_back(annotation());
    if (at("package")) {
      AstNode pkg("PackageDeclaration");
      for (auto& a : annotations) pkg.add(std::move(a));
      advance();
      pkg.add(qualified_name());
      expect(";");
      cu.add(closed(std::move(pkg), before_package));
    } else {
      pos_ = before_package;
    }

    while (at("import")) cu.add(import_declaration());

    while (peek().kind != TokenKind::kEnd) {
      if (accept(";")) continue;
      const std::size_t start = pos_;
      auto mods = modifiers(true);
      cu.add(type_declaration(start, std::move(mods)));
    }

    const Token& end = toks_.back();
    cu.range = SourceRange{1, 0, end.end.line, end.end.column};
    return cu;
  }

 private:
  // ---------------------------------------------------------------- tokens

  [[nodiscard]] const Token& peek(std::size_t k = 0) const {
    return toks_[std::min(pos_ + k, toks_.size() - 1)];
  }

  [[nodiscard]] bool at(std::string_view text, std::size_t k = 0) const {
    const Token& t = peek(k);
    return t.kind != TokenKind::kEnd && t.text == text;
  }

  [[nodiscard]] bool at_identifier(std::size_t k = 0) const {
    return peek(k).kind == TokenKind::kIdentifier;
  }

  [[nodiscard]] bool at_primitive(std::size_t k = 0) const {
    const Token& t = peek(k);
    return t.kind == TokenKind::kKeyword && contains(kPrimitiveTypes, t.text);
  }

  [[nodiscard]] bool adjacent(std::size_t k) const { return peek(k).end == peek(k + 1).begin; }

  const Token& advance() {
    const Token& t = toks_[pos_];
    if (t.kind != TokenKind::kEnd) ++pos_;
    return t;
  }

  bool accept(std::string_view text) {
    if (!at(text)) return false;
    advance();
    return true;
  }

  const Token& expect(std::string_view text) {
    if (!at(text)) fail("expected '" + std::string(text) + "'");
    return advance();
  }

  const Token& expect_identifier() {
    if (!at_identifier()) fail("expected identifier");
    return advance();
  }

  [[noreturn]] void fail(const std::string& what) const {
    const Token& t = peek();
    throw SyntaxError(t.begin.line, t.begin.column,
                      what + (t.kind == TokenKind::kEnd ? " but reached end of file"
                                                        : " but found '" + t.text + "'"));
  }

  /// Operator at the cursor with adjacent `>`/`=` tokens folded back together.
  [[nodiscard]] std::pair<std::string, std::size_t> peek_operator() const {
    const Token& t = peek();
    if (t.kind != TokenKind::kOperator) return {"", 0};
    if (t.text != ">") return {t.text, 1};
    std::string op = ">";
    std::size_t n = 1;
    while (n < 3 && peek(n).text == ">" && adjacent(n - 1)) {
      op.push_back('>');
      ++n;
    }
    if (peek(n).text == "=" && peek(n).kind == TokenKind::kOperator && adjacent(n - 1)) {
      op.push_back('=');
      ++n;
    }
    return {op, n};
  }

  // ----------------------------------------------------------------- nodes

  AstNode closed(AstNode node, std::size_t start) const {
    const Token& first = toks_[start];
    const Token& last = toks_[pos_ > start ? pos_ - 1 : start];
    node.range = SourceRange{first.begin.line, first.begin.column, last.end.line, last.end.column};
    return node;
  }

  static AstNode leaf(std::string label, const Token& t, std::optional<std::string> token) {
    return AstNode(std::move(label), std::move(token),
                   SourceRange{t.begin.line, t.begin.column, t.end.line, t.end.column});
  }

  AstNode name_leaf() {
    const Token& t = expect_identifier();
    return leaf("SimpleName", t, t.text);
  }

  /// a.b.c -> Name("c", [Name("b", [Name("a")])]); each segment keeps its token.
  AstNode qualified_name() {
    const std::size_t start = pos_;
    const Token& first = expect_identifier();
    AstNode name = leaf("Name", first, first.text);
    while (at(".") && at_identifier(1)) {
      advance();
      const Token& id = advance();
      AstNode outer("Name", id.text);
      outer.add(std::move(name));
      name = closed(std::move(outer), start);
    }
    return name;
  }

  // ----------------------------------------------------------- declarations

  AstNode import_declaration() {
    const std::size_t start = pos_;
    expect("import");
    AstNode imp("ImportDeclaration");
    if (at("static")) {
      const Token& t = advance();
      imp.add(leaf("Modifier", t, t.text));
    }
    imp.add(qualified_name());
    if (at(".") && at("*", 1)) {
      advance();
      const Token& star = advance();
      imp.add(leaf("WildcardImport", star, star.text));
    }
    expect(";");
    return closed(std::move(imp), start);
  }

  [[nodiscard]] bool at_modifier(bool member_context) const {
    const Token& t = peek();
    if (t.kind == TokenKind::kKeyword) {
      if (!member_context) return t.text == "final";
      if (t.text == "default") return !at(":", 1) && !at("->", 1);
      return contains(kMemberModifiers, t.text);
    }
    if (member_context && t.kind == TokenKind::kIdentifier) {
      if (t.text == "sealed") return peek(1).kind == TokenKind::kKeyword || at("non", 1);
      if (t.text == "non") return at("-", 1) && at("sealed", 2) && adjacent(0) && adjacent(1);
    }
    return false;
  }

  std::vector<AstNode> modifiers(bool member_context) {
    std::vector<AstNode> out;
    for (;;) {
      if (at("@") && !at("interface", 1)) {
        out.push_back(annotation());
      } else if (at_modifier(member_context)) {
        const std::size_t start = pos_;
        std::string text = advance().text;
        if (text == "non") {
          advance();
          advance();
          text = "non-sealed";
        }
        AstNode mod("Modifier", std::move(text));
        out.push_back(closed(std::move(mod), start));
      } else {
        return out;
      }
    }
  }

  AstNode annotation() {
    const std::size_t start = pos_;
    expect("@");
    AstNode name = qualified_name();
    if (!accept("(")) {
      AstNode a("MarkerAnnotationExpr");
      a.add(std::move(name));
      return closed(std::move(a), start);
    }
    if (accept(")")) {
      AstNode a("NormalAnnotationExpr");
      a.add(std::move(name));
      return closed(std::move(a), start);
    }
    if (at_identifier() && at("=", 1)) {
      AstNode a("NormalAnnotationExpr");
      a.add(std::move(name));
      do {
        const std::size_t pair_start = pos_;
        AstNode pair("MemberValuePair");
        pair.add(name_leaf());
        expect("=");
        pair.add(element_value());
        a.add(closed(std::move(pair), pair_start));
      } while (accept(","));
      expect(")");
      return closed(std::move(a), start);
    }
    AstNode a("SingleMemberAnnotationExpr");
    a.add(std::move(name));
    a.add(element_value());
    expect(")");
    return closed(std::move(a), start);
  }

  AstNode element_value() {
    if (at("@")) return annotation();
    if (at("{")) {
      const std::size_t start = pos_;
      advance();
      AstNode init("ArrayInitializerExpr");
      while (!at("}")) {
        init.add(element_value());
        if (!accept(",")) break;
      }
      expect("}");
      return closed(std::move(init), start);
    }
    return conditional();
  }

  [[nodiscard]] bool at_type_declaration_start() const {
    return at("class") || at("interface") || at("enum") || (at("@") && at("interface", 1)) ||
           (at("record") && at_identifier(1) && (at("(", 2) || at("<", 2)));
  }

  AstNode type_declaration(std::size_t start, std::vector<AstNode> mods) {
    if (at("class") || at("interface")) return class_declaration(start, std::move(mods));
    if (at("enum")) return enum_declaration(start, std::move(mods));
    if (at("@") && at("interface", 1)) return annotation_declaration(start, std::move(mods));
    if (at("record") && at_identifier(1)) return record_declaration(start, std::move(mods));
    fail("expected type declaration");
  }

  void type_list(AstNode& owner) {
    do {
      owner.add(class_type());
    } while (accept(","));
  }

  AstNode class_declaration(std::size_t start, std::vector<AstNode> mods) {
    AstNode decl("ClassOrInterfaceDeclaration");
    for (auto& m : mods) decl.add(std::move(m));
    advance();
    decl.add(name_leaf());
    if (at("<")) type_parameters(decl);
    if (accept("extends")) type_list(decl);
    if (accept("implements")) type_list(decl);
    if (at("permits") && at_identifier(1)) {
      advance();
      type_list(decl);
    }
    class_body(decl);
    return closed(std::move(decl), start);
  }

  AstNode enum_declaration(std::size_t start, std::vector<AstNode> mods) {
    AstNode decl("EnumDeclaration");
    for (auto& m : mods) decl.add(std::move(m));
    expect("enum");
    decl.add(name_leaf());
    if (accept("implements")) type_list(decl);
    expect("{");
    while (!at(";") && !at("}")) {
      const std::size_t c_start = pos_;
      AstNode constant("EnumConstantDeclaration");
      for (auto& m : modifiers(false)) constant.add(std::move(m));
      constant.add(name_leaf());
      if (at("(")) arguments(constant);
      if (at("{")) class_body(constant);
      decl.add(closed(std::move(constant), c_start));
      if (!accept(",")) break;
    }
    if (accept(";")) {
      while (!at("}")) {
        if (accept(";")) continue;
        decl.add(member());
      }
    }
    expect("}");
    return closed(std::move(decl), start);
  }

  AstNode annotation_declaration(std::size_t start, std::vector<AstNode> mods) {
    AstNode decl("AnnotationDeclaration");
    for (auto& m : mods) decl.add(std::move(m));
    expect("@");
    expect("interface");
    decl.add(name_leaf());
    class_body(decl);
    return closed(std::move(decl), start);
  }

  AstNode record_declaration(std::size_t start, std::vector<AstNode> mods) {
    AstNode decl("RecordDeclaration");
    for (auto& m : mods) decl.add(std::move(m));
    advance();
    decl.add(name_leaf());
    if (at("<")) type_parameters(decl);
    formal_parameters(decl);
    if (accept("implements")) type_list(decl);
    class_body(decl);
    return closed(std::move(decl), start);
  }

  void class_body(AstNode& owner) {
    expect("{");
    while (!at("}")) {
      if (peek().kind == TokenKind::kEnd) fail("expected '}'");
      if (accept(";")) continue;
      owner.add(member());
    }
    expect("}");
  }

  AstNode member() {
    const std::size_t start = pos_;
    auto mods = modifiers(true);
    if (at_type_declaration_start()) return type_declaration(start, std::move(mods));
    if (at("{")) {
      AstNode init("InitializerDeclaration");
      for (auto& m : mods) init.add(std::move(m));
      init.add(block());
      return closed(std::move(init), start);
    }

    std::vector<AstNode> type_params;
    if (at("<")) {
      AstNode holder("TypeParameters");
      type_parameters(holder);
      type_params = std::move(holder.children);
    }

    if (at_identifier() && (at("(", 1) || at("{", 1))) {
      AstNode ctor("ConstructorDeclaration");
      for (auto& m : mods) ctor.add(std::move(m));
      for (auto& p : type_params) ctor.add(std::move(p));
      ctor.add(name_leaf());
      // Records allow a compact canonical constructor without a parameter list.
      if (at("(")) formal_parameters(ctor);
      if (accept("throws")) type_list(ctor);
      ctor.add(block());
      return closed(std::move(ctor), start);
    }

    AstNode type;
    if (at("void")) {
      const Token& t = advance();
      type = leaf("VoidType", t, t.text);
    } else {
      type = this->type();
    }

    if (at_identifier() && at("(", 1)) {
      AstNode method("MethodDeclaration");
      for (auto& m : mods) method.add(std::move(m));
      for (auto& p : type_params) method.add(std::move(p));
      method.add(std::move(type));
      method.add(name_leaf());
      formal_parameters(method);
      skip_dims();
      if (accept("throws")) type_list(method);
      if (accept("default")) {
        method.type_label = "AnnotationMemberDeclaration";
        method.add(element_value());
        expect(";");
      } else if (at("{")) {
        method.add(block());
      } else {
        expect(";");
      }
      return closed(std::move(method), start);
    }

    if (!type_params.empty()) fail("expected method declaration");
    AstNode field("FieldDeclaration");
    for (auto& m : mods) field.add(std::move(m));
    field.add(std::move(type));
    variable_declarators(field);
    expect(";");
    return closed(std::move(field), start);
  }

  void formal_parameters(AstNode& owner) {
    expect("(");
    if (!at(")")) {
      do {
        owner.add(parameter());
      } while (accept(","));
    }
    expect(")");
  }

  AstNode parameter() {
    const std::size_t start = pos_;
    AstNode param("Parameter");
    for (auto& m : modifiers(false)) param.add(std::move(m));
    param.add(type());
    if (at("...")) {
      const Token& t = advance();
      param.add(leaf("VarArgs", t, t.text));
    }
    if (at("this")) {
      const Token& t = advance();
      param.add(leaf("SimpleName", t, t.text));
    } else {
      param.add(name_leaf());
    }
    skip_dims();
    return closed(std::move(param), start);
  }

  void skip_dims() {
    while (at("[") && at("]", 1)) {
      advance();
      advance();
    }
  }

  void variable_declarators(AstNode& owner) {
    do {
      const std::size_t start = pos_;
      AstNode var("VariableDeclarator");
      var.add(name_leaf());
      skip_dims();
      if (accept("=")) var.add(variable_initializer());
      owner.add(closed(std::move(var), start));
    } while (accept(","));
  }

  AstNode variable_initializer() { return at("{") ? array_initializer() : expression(); }

  AstNode array_initializer() {
    const std::size_t start = pos_;
    expect("{");
    AstNode init("ArrayInitializerExpr");
    while (!at("}")) {
      init.add(variable_initializer());
      if (!accept(",")) break;
    }
    expect("}");
    return closed(std::move(init), start);
  }

  // ------------------------------------------------------------------ types

  void type_parameters(AstNode& owner) {
    expect("<");
    do {
      const std::size_t start = pos_;
      AstNode tp("TypeParameter");
      while (at("@")) tp.add(annotation());
      tp.add(name_leaf());
      if (accept("extends")) {
        do {
          tp.add(class_type());
        } while (accept("&"));
      }
      owner.add(closed(std::move(tp), start));
    } while (accept(","));
    expect(">");
  }

  AstNode type() {
    const std::size_t start = pos_;
    std::vector<AstNode> annotations;
    while (at("@") && !at("interface", 1)) annotations.push_back(annotation());

    AstNode t;
    if (at_primitive()) {
      const Token& tok = advance();
      t = leaf("PrimitiveType", tok, tok.text);
    } else {
      t = class_type();
    }
    if (!annotations.empty()) {
      t.children.insert(t.children.begin(), std::make_move_iterator(annotations.begin()),
                        std::make_move_iterator(annotations.end()));
      t = closed(std::move(t), start);
    }
    while (at("[") && at("]", 1)) {
      advance();
      advance();
      AstNode array("ArrayType");
      array.add(std::move(t));
      t = closed(std::move(array), start);
    }
    return t;
  }

  AstNode class_type() {
    const std::size_t start = pos_;
    AstNode t("ClassOrInterfaceType");
    t.add(name_leaf());
    if (at("<")) type_arguments(t);
    t = closed(std::move(t), start);
    while (at(".") && at_identifier(1)) {
      advance();
      AstNode outer("ClassOrInterfaceType");
      outer.add(std::move(t));
      outer.add(name_leaf());
      if (at("<")) type_arguments(outer);
      t = closed(std::move(outer), start);
    }
    return t;
  }

  void type_arguments(AstNode& owner) {
    expect("<");
    if (accept(">")) return;  // diamond
    do {
      if (at("?")) {
        const std::size_t start = pos_;
        advance();
        AstNode wildcard("WildcardType");
        if (at("extends") || at("super")) {
          wildcard.token = advance().text;
          wildcard.add(type());
        }
        owner.add(closed(std::move(wildcard), start));
      } else {
        owner.add(type());
      }
    } while (accept(","));
    expect(">");
  }

  // ------------------------------------------------------------- statements

  AstNode block() {
    const std::size_t start = pos_;
    expect("{");
    AstNode b("BlockStmt");
    while (!at("}")) {
      if (peek().kind == TokenKind::kEnd) fail("expected '}'");
      b.add(block_statement());
    }
    expect("}");
    return closed(std::move(b), start);
  }

  [[nodiscard]] bool looks_like_local_variable() {
    if (!at_identifier() && !at_primitive()) return false;
    if (at("var") && at_identifier(1)) return true;
    const std::size_t save = pos_;
    bool ok = false;
    try {
      type();
      ok = at_identifier() &&
           (at("=", 1) || at(";", 1) || at(",", 1) || at("[", 1) || at(":", 1));
    } catch (const SyntaxError&) {
    }
    pos_ = save;
    return ok;
  }

  [[nodiscard]] bool at_yield_statement() const {
    if (!at("yield")) return false;
    const Token& n = peek(1);
    if (n.kind != TokenKind::kOperator) return true;
    return !(n.text == "=" || n.text == "(" || n.text == "." || n.text == "[" ||
             n.text == "++" || n.text == "--" || n.text == "->" || n.text == ";" ||
             n.text == "+=" || n.text == "-=" || n.text == ":");
  }

  AstNode block_statement() {
    const std::size_t start = pos_;
    if (at("final") || (at("@") && !at("interface", 1)) || at("abstract") || at("static") ||
        at("strictfp")) {
      std::vector<AstNode> mods;
      for (;;) {
        if (at("@")) {
          mods.push_back(annotation());
        } else if (at("final") || at("abstract") || at("static") || at("strictfp")) {
          const Token& t = advance();
          mods.push_back(leaf("Modifier", t, t.text));
        } else {
          break;
        }
      }
      if (at_type_declaration_start()) {
        AstNode local("LocalClassDeclarationStmt");
        local.add(type_declaration(start, std::move(mods)));
        return closed(std::move(local), start);
      }
      return local_variable_statement(start, std::move(mods));
    }
    if (at_type_declaration_start()) {
      AstNode local("LocalClassDeclarationStmt");
      local.add(type_declaration(start, {}));
      return closed(std::move(local), start);
    }
    if (at_identifier() && at(":", 1)) {
      AstNode labeled("LabeledStmt");
      labeled.add(name_leaf());
      advance();
      labeled.add(statement());
      return closed(std::move(labeled), start);
    }
    if (!at_yield_statement() && looks_like_local_variable()) {
      return local_variable_statement(start, {});
    }
    return statement();
  }

  AstNode local_variable_expression(std::size_t start, std::vector<AstNode> mods) {
    AstNode decl("VariableDeclarationExpr");
    for (auto& m : mods) decl.add(std::move(m));
    decl.add(type());
    variable_declarators(decl);
    return closed(std::move(decl), start);
  }

  AstNode local_variable_statement(std::size_t start, std::vector<AstNode> mods) {
    AstNode stmt("ExpressionStmt");
    stmt.add(local_variable_expression(start, std::move(mods)));
    expect(";");
    return closed(std::move(stmt), start);
  }

  AstNode statement() {
    const std::size_t start = pos_;
    if (at("{")) return block();
    if (at(";")) {
      advance();
      return closed(AstNode("EmptyStmt"), start);
    }
    if (accept("if")) {
      AstNode s("IfStmt");
      s.add(parenthesized());
      s.add(statement());
      if (accept("else")) s.add(statement());
      return closed(std::move(s), start);
    }
    if (accept("while")) {
      AstNode s("WhileStmt");
      s.add(parenthesized());
      s.add(statement());
      return closed(std::move(s), start);
    }
    if (accept("do")) {
      AstNode s("DoStmt");
      s.add(statement());
      expect("while");
      s.add(parenthesized());
      expect(";");
      return closed(std::move(s), start);
    }
    if (at("for")) return for_statement();
    if (accept("return")) {
      AstNode s("ReturnStmt");
      if (!at(";")) s.add(expression());
      expect(";");
      return closed(std::move(s), start);
    }
    if (at("break") || at("continue")) {
      AstNode s(advance().text == "break" ? "BreakStmt" : "ContinueStmt");
      if (at_identifier()) s.add(name_leaf());
      expect(";");
      return closed(std::move(s), start);
    }
    if (accept("throw")) {
      AstNode s("ThrowStmt");
      s.add(expression());
      expect(";");
      return closed(std::move(s), start);
    }
    if (at("try")) return try_statement();
    if (accept("switch")) {
      AstNode s("SwitchStmt");
      s.add(parenthesized());
      switch_body(s);
      return closed(std::move(s), start);
    }
    if (accept("synchronized")) {
      AstNode s("SynchronizedStmt");
      s.add(parenthesized());
      s.add(block());
      return closed(std::move(s), start);
    }
    if (accept("assert")) {
      AstNode s("AssertStmt");
      s.add(expression());
      if (accept(":")) s.add(expression());
      expect(";");
      return closed(std::move(s), start);
    }
    if (at_yield_statement()) {
      advance();
      AstNode s("YieldStmt");
      s.add(expression());
      expect(";");
      return closed(std::move(s), start);
    }
    if ((at("this") || at("super")) && at("(", 1)) {
      AstNode s("ExplicitConstructorInvocationStmt", advance().text);
      arguments(s);
      expect(";");
      return closed(std::move(s), start);
    }
    AstNode s("ExpressionStmt");
    s.add(expression());
    expect(";");
    return closed(std::move(s), start);
  }

  AstNode parenthesized() {
    expect("(");
    AstNode e = expression();
    expect(")");
    return e;
  }

  AstNode for_statement() {
    const std::size_t start = pos_;
    expect("for");
    expect("(");

    bool foreach = false;
    {
      const std::size_t save = pos_;
      try {
        modifiers(false);
        type();
        expect_identifier();
        foreach = at(":");
      } catch (const SyntaxError&) {
      }
      pos_ = save;
    }

    if (foreach) {
      AstNode s("ForEachStmt");
      const std::size_t var_start = pos_;
      AstNode var("VariableDeclarationExpr");
      for (auto& m : modifiers(false)) var.add(std::move(m));
      var.add(type());
      const std::size_t decl_start = pos_;
      AstNode declarator("VariableDeclarator");
      declarator.add(name_leaf());
      var.add(closed(std::move(declarator), decl_start));
      s.add(closed(std::move(var), var_start));
      expect(":");
      s.add(expression());
      expect(")");
      s.add(statement());
      return closed(std::move(s), start);
    }

    AstNode s("ForStmt");
    if (!at(";")) {
      const std::size_t init_start = pos_;
      if (at("final") || at("@") || looks_like_local_variable()) {
        s.add(local_variable_expression(init_start, modifiers(false)));
      } else {
        do {
          s.add(expression());
        } while (accept(","));
      }
    }
    expect(";");
    if (!at(";")) s.add(expression());
    expect(";");
    if (!at(")")) {
      do {
        s.add(expression());
      } while (accept(","));
    }
    expect(")");
    s.add(statement());
    return closed(std::move(s), start);
  }

  AstNode try_statement() {
    const std::size_t start = pos_;
    expect("try");
    AstNode s("TryStmt");
    bool has_resources = false;
    if (accept("(")) {
      has_resources = true;
      while (!at(")")) {
        const std::size_t r_start = pos_;
        if (at("final") || at("@") || looks_like_local_variable()) {
          s.add(local_variable_expression(r_start, modifiers(false)));
        } else {
          s.add(expression());
        }
        if (!accept(";")) break;
      }
      expect(")");
    }
    s.add(block());
    bool has_handler = false;
    while (at("catch")) {
      has_handler = true;
      const std::size_t c_start = pos_;
      advance();
      expect("(");
      AstNode clause("CatchClause");
      const std::size_t p_start = pos_;
      AstNode param("Parameter");
      for (auto& m : modifiers(false)) param.add(std::move(m));
      const std::size_t t_start = pos_;
      AstNode caught = type();
      if (at("|")) {
        AstNode u("UnionType");
        u.add(std::move(caught));
        while (accept("|")) u.add(type());
        caught = closed(std::move(u), t_start);
      }
      param.add(std::move(caught));
      param.add(name_leaf());
      clause.add(closed(std::move(param), p_start));
      expect(")");
      clause.add(block());
      s.add(closed(std::move(clause), c_start));
    }
    if (accept("finally")) {
      has_handler = true;
      s.add(block());
    }
    if (!has_handler && !has_resources) fail("expected 'catch' or 'finally'");
    return closed(std::move(s), start);
  }

  void switch_body(AstNode& owner) {
    expect("{");
    while (!at("}")) {
      if (peek().kind == TokenKind::kEnd) fail("expected '}'");
      owner.add(switch_entry());
    }
    expect("}");
  }

  AstNode switch_entry() {
    const std::size_t start = pos_;
    AstNode entry("SwitchEntry");
    if (!accept("default")) {
      expect("case");
      const bool saved = no_lambda_;
      no_lambda_ = true;
      do {
        if (at("default")) {
          const Token& t = advance();
          entry.add(leaf("DefaultLabel", t, t.text));
        } else {
          entry.add(conditional());
        }
      } while (accept(","));
      no_lambda_ = saved;
    }
    if (accept("->")) {
      if (at("{")) {
        entry.add(block());
      } else if (at("throw")) {
        entry.add(statement());
      } else {
        const std::size_t e_start = pos_;
        AstNode stmt("ExpressionStmt");
        stmt.add(expression());
        expect(";");
        entry.add(closed(std::move(stmt), e_start));
      }
      return closed(std::move(entry), start);
    }
    expect(":");
    while (!at("case") && !at("default") && !at("}")) {
      if (peek().kind == TokenKind::kEnd) fail("expected '}'");
      entry.add(block_statement());
    }
    return closed(std::move(entry), start);
  }

  // ------------------------------------------------------------ expressions

  AstNode expression() {
    const std::size_t start = pos_;
    AstNode lhs = conditional();
    auto [op, width] = peek_operator();
    if (width > 0 && contains(kAssignmentOperators, op)) {
      for (std::size_t k = 0; k < width; ++k) advance();
      AstNode assign("AssignExpr", op);
      assign.add(std::move(lhs));
      assign.add(expression());
      return closed(std::move(assign), start);
    }
    return lhs;
  }

  AstNode conditional() {
    const std::size_t start = pos_;
    AstNode cond = binary(1);
    if (!accept("?")) return cond;
    AstNode c("ConditionalExpr");
    c.add(std::move(cond));
    c.add(expression());
    expect(":");
    c.add(conditional());
    return closed(std::move(c), start);
  }

  AstNode binary(int min_prec) {
    const std::size_t start = pos_;
    AstNode lhs = unary();
    for (;;) {
      auto [op, width] = peek_operator();
      if (at("instanceof")) {
        op = "instanceof";
        width = 1;
      }
      const int prec = width > 0 ? binary_precedence(op) : 0;
      if (prec == 0 || prec < min_prec) return lhs;
      // A compound assignment such as ">>=" is not a binary operator.
      if (contains(kAssignmentOperators, op)) return lhs;

      if (op == "instanceof") {
        advance();
        AstNode inst("InstanceOfExpr");
        inst.add(std::move(lhs));
        for (auto& m : modifiers(false)) inst.add(std::move(m));
        inst.add(type());
        if (at_identifier()) inst.add(name_leaf());
        lhs = closed(std::move(inst), start);
        continue;
      }
      for (std::size_t k = 0; k < width; ++k) advance();
      AstNode bin("BinaryExpr", op);
      bin.add(std::move(lhs));
      bin.add(binary(prec + 1));
      lhs = closed(std::move(bin), start);
    }
  }

  AstNode unary() {
    const std::size_t start = pos_;
    if (at("+") || at("-") || at("++") || at("--") || at("!") || at("~")) {
      AstNode u("UnaryExpr", advance().text);
      u.add(unary());
      return closed(std::move(u), start);
    }
    if (at("(") && at_cast()) {
      advance();
      AstNode cast("CastExpr");
      const std::size_t t_start = pos_;
      AstNode target = type();
      if (at("&")) {
        AstNode inter("IntersectionType");
        inter.add(std::move(target));
        while (accept("&")) inter.add(type());
        target = closed(std::move(inter), t_start);
      }
      cast.add(std::move(target));
      expect(")");
      cast.add(unary());
      return closed(std::move(cast), start);
    }
    AstNode e = selectors(primary(), start);
    if (at("++") || at("--")) {
      AstNode post("UnaryExpr", advance().text);
      post.add(std::move(e));
      return closed(std::move(post), start);
    }
    return e;
  }

  [[nodiscard]] bool at_cast() {
    const std::size_t save = pos_;
    bool ok = false;
    const bool primitive = at_primitive(1);
    if (!primitive && !at_identifier(1) && !at("@", 1)) return false;
    try {
      advance();
      type();
      while (accept("&")) type();
      if (accept(")")) {
        if (primitive) {
          ok = true;
        } else {
          const Token& n = peek();
          switch (n.kind) {
            case TokenKind::kIdentifier:
            case TokenKind::kIntLiteral:
            case TokenKind::kLongLiteral:
            case TokenKind::kFloatLiteral:
            case TokenKind::kCharLiteral:
            case TokenKind::kStringLiteral:
            case TokenKind::kTextBlock:
              ok = true;
              break;
            case TokenKind::kKeyword:
              ok = n.text == "this" || n.text == "super" || n.text == "new" ||
                   n.text == "true" || n.text == "false" || n.text == "null" ||
                   n.text == "switch" || contains(kPrimitiveTypes, n.text);
              break;
            case TokenKind::kOperator:
              ok = n.text == "(" || n.text == "!" || n.text == "~";
              break;
            case TokenKind::kEnd:
              break;
          }
        }
      }
    } catch (const SyntaxError&) {
    }
    pos_ = save;
    return ok;
  }

  [[nodiscard]] bool at_parenthesized_lambda() const {
    if (no_lambda_ || !at("(")) return false;
    int depth = 0;
    for (std::size_t k = 0;; ++k) {
      const Token& t = peek(k);
      if (t.kind == TokenKind::kEnd) return false;
      if (t.kind != TokenKind::kOperator) continue;
      if (t.text == "(") {
        ++depth;
      } else if (t.text == ")") {
        if (--depth == 0) return at("->", k + 1);
      }
    }
  }

  AstNode lambda() {
    const std::size_t start = pos_;
    AstNode l("LambdaExpr");
    if (at_identifier()) {
      const std::size_t p_start = pos_;
      AstNode p("Parameter");
      p.add(name_leaf());
      l.add(closed(std::move(p), p_start));
    } else {
      expect("(");
      if (!at(")")) {
        const bool untyped = at_identifier() && (at(",", 1) || at(")", 1));
        do {
          if (untyped) {
            const std::size_t p_start = pos_;
            AstNode p("Parameter");
            p.add(name_leaf());
            l.add(closed(std::move(p), p_start));
          } else {
            l.add(parameter());
          }
        } while (accept(","));
      }
      expect(")");
    }
    expect("->");
    l.add(at("{") ? block() : expression());
    return closed(std::move(l), start);
  }

  void arguments(AstNode& owner) {
    expect("(");
    if (!at(")")) {
      do {
        owner.add(expression());
      } while (accept(","));
    }
    expect(")");
  }

  AstNode primary() {
    const std::size_t start = pos_;
    const Token& t = peek();
    switch (t.kind) {
      case TokenKind::kIntLiteral:
        return leaf("IntegerLiteralExpr", advance(), t.text);
      case TokenKind::kLongLiteral:
        return leaf("LongLiteralExpr", advance(), t.text);
      case TokenKind::kFloatLiteral:
        return leaf("DoubleLiteralExpr", advance(), t.text);
      case TokenKind::kCharLiteral:
        return leaf("CharLiteralExpr", advance(), strip_quotes(t));
      case TokenKind::kStringLiteral:
        return leaf("StringLiteralExpr", advance(), strip_quotes(t));
      case TokenKind::kTextBlock:
        return leaf("TextBlockLiteralExpr", advance(), strip_quotes(t));
      case TokenKind::kIdentifier: {
        if (!no_lambda_ && at("->", 1)) return lambda();
        if (at("(", 1)) {
          AstNode call("MethodCallExpr");
          call.add(name_leaf());
          arguments(call);
          return closed(std::move(call), start);
        }
        AstNode name("NameExpr");
        name.add(name_leaf());
        return closed(std::move(name), start);
      }
      case TokenKind::kKeyword:
        break;
      case TokenKind::kOperator:
        if (at("(")) {
          if (at_parenthesized_lambda()) return lambda();
          advance();
          AstNode enclosed("EnclosedExpr");
          enclosed.add(expression());
          expect(")");
          return closed(std::move(enclosed), start);
        }
        fail("expected expression");
      case TokenKind::kEnd:
        fail("expected expression");
    }

    if (t.text == "true" || t.text == "false") return leaf("BooleanLiteralExpr", advance(), t.text);
    if (t.text == "null") return leaf("NullLiteralExpr", advance(), t.text);
    if (t.text == "this") return leaf("ThisExpr", advance(), t.text);
    if (t.text == "super") return leaf("SuperExpr", advance(), t.text);
    if (t.text == "new") return creation(std::nullopt, start);
    if (t.text == "switch") {
      advance();
      AstNode s("SwitchExpr");
      s.add(parenthesized());
      switch_body(s);
      return closed(std::move(s), start);
    }
    if (at_primitive() || at("void")) {
      AstNode target;
      if (at("void")) {
        const Token& v = advance();
        target = leaf("VoidType", v, v.text);
      } else {
        target = type();
      }
      expect(".");
      expect("class");
      AstNode cls("ClassExpr");
      cls.add(std::move(target));
      return closed(std::move(cls), start);
    }
    fail("expected expression");
  }

  AstNode creation(std::optional<AstNode> scope, std::size_t start) {
    expect("new");
    AstNode created;
    if (at_primitive()) {
      const Token& p = advance();
      created = leaf("PrimitiveType", p, p.text);
    } else {
      while (at("@")) annotation();
      created = class_type();
    }

    if (at("[")) {
      AstNode array("ArrayCreationExpr");
      array.add(std::move(created));
      while (at("[")) {
        const std::size_t l_start = pos_;
        advance();
        AstNode level("ArrayCreationLevel");
        if (!at("]")) level.add(expression());
        expect("]");
        array.add(closed(std::move(level), l_start));
      }
      if (at("{")) array.add(array_initializer());
      return closed(std::move(array), start);
    }

    AstNode object("ObjectCreationExpr");
    if (scope) object.add(std::move(*scope));
    object.add(std::move(created));
    arguments(object);
    if (at("{")) class_body(object);
    return closed(std::move(object), start);
  }

  AstNode selectors(AstNode e, std::size_t start) {
    for (;;) {
      if (accept(".")) {
        if (at("<")) {
          AstNode call("MethodCallExpr");
          call.add(std::move(e));
          type_arguments(call);
          call.add(name_leaf());
          arguments(call);
          e = closed(std::move(call), start);
        } else if (at_identifier()) {
          if (at("(", 1)) {
            AstNode call("MethodCallExpr");
            call.add(std::move(e));
            call.add(name_leaf());
            arguments(call);
            e = closed(std::move(call), start);
          } else {
            AstNode field("FieldAccessExpr");
            field.add(std::move(e));
            field.add(name_leaf());
            e = closed(std::move(field), start);
          }
        } else if (at("new")) {
          e = creation(std::move(e), start);
        } else if (at("this") || at("super")) {
          const Token& kw = advance();
          AstNode qualified(kw.text == "this" ? "ThisExpr" : "SuperExpr", kw.text);
          qualified.add(std::move(e));
          e = closed(std::move(qualified), start);
        } else if (accept("class")) {
          AstNode cls("ClassExpr");
          cls.add(std::move(e));
          e = closed(std::move(cls), start);
        } else {
          fail("expected member name");
        }
      } else if (accept("[")) {
        AstNode access("ArrayAccessExpr");
        access.add(std::move(e));
        access.add(expression());
        expect("]");
        e = closed(std::move(access), start);
      } else if (accept("::")) {
        const Token& target = at("new") ? advance() : expect_identifier();
        AstNode ref("MethodReferenceExpr", target.text);
        ref.add(std::move(e));
        e = closed(std::move(ref), start);
      } else {
        return e;
      }
    }
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  bool no_lambda_ = false;
};

}  // namespace

AstNode parse(std::string_view source) {
  Parser parser(tokenize(source));
  return parser.compilation_unit();
}

}  // namespace treeforge::java
