#pragma once

#include <chrono>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "treeforge/ast.hpp"

namespace treeforge {

enum class ParserKind { kInProcessGrammar, kForeignSubprocess };

struct ParserDescriptor {
  std::string parser_id;
  std::string language_id;
  ParserKind kind = ParserKind::kInProcessGrammar;
  std::optional<std::vector<std::string>> command;  // foreign only
  std::optional<std::string> grammar_ref;           // in-process only
  std::chrono::milliseconds timeout{std::chrono::seconds(60)};

  /// Throws std::invalid_argument unless exactly the field matching `kind` is set.
  void validate() const;
};

/// A recoverable failure: the file (or one method in it) is dropped and the
/// run continues.
struct SkipEvent {
  std::string file_path;
  std::string message;
  std::optional<SourceRange> range;  // set for method-level skips

  friend bool operator==(const SkipEvent&, const SkipEvent&) = default;
};

using ParseOutcome = std::variant<AstNode, SkipEvent>;

/// Grammars compiled into the library, by grammar_ref.
std::vector<std::string> registered_grammars();
/// Default file extensions for a language ("java" -> {".java"}).
std::vector<std::string> default_extensions(std::string_view language_id);

/// Replaces every invalid UTF-8 sequence with U+FFFD.
std::string decode_utf8_lossy(std::string_view bytes);

/// Parses one file with the backend described by `descriptor`. `file_path` is
/// what the backend sees (foreign parsers receive it as `-f <file_path>`);
/// `display_path` is recorded in skip events.
ParseOutcome parse_file(const ParserDescriptor& descriptor, const std::string& file_path,
                        std::string_view file_bytes, std::string_view display_path = {});

}  // namespace treeforge
