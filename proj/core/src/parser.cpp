#include "treeforge/parser.hpp"

#include "treeforge/foreign.hpp"
#include "treeforge/java.hpp"

namespace treeforge {

void ParserDescriptor::validate() const {
  if (parser_id.empty()) throw std::invalid_argument("parser_id must not be empty");
  if (language_id.empty()) throw std::invalid_argument("language_id must not be empty");
  switch (kind) {
    case ParserKind::kInProcessGrammar:
      if (!grammar_ref || command) {
        throw std::invalid_argument("in_process_grammar parser needs grammar_ref and no command");
      }
      break;
    case ParserKind::kForeignSubprocess:
      if (!command || grammar_ref) {
        throw std::invalid_argument("foreign_subprocess parser needs command and no grammar_ref");
      }
      if (command->empty()) throw std::invalid_argument("command must not be empty");
      break;
  }
  if (timeout.count() <= 0) throw std::invalid_argument("timeout must be positive");
}

std::vector<std::string> registered_grammars() { return {"java"}; }

std::vector<std::string> default_extensions(std::string_view language_id) {
  if (language_id == "java") return {".java"};
  return {"." + std::string(language_id)};
}

std::string decode_utf8_lossy(std::string_view bytes) {
  static constexpr std::string_view kReplacement = "\xEF\xBF\xBD";
  std::string out;
  out.reserve(bytes.size());
  std::size_t i = 0;
  const std::size_t n = bytes.size();
  auto byte = [&](std::size_t k) { return static_cast<unsigned char>(bytes[k]); };
  auto continuation = [&](std::size_t k) { return k < n && (byte(k) & 0xC0) == 0x80; };

  while (i < n) {
    const unsigned char c = byte(i);
    std::size_t len = 0;
    if (c < 0x80) {
      len = 1;
    } else if (c >= 0xC2 && c <= 0xDF) {
      len = continuation(i + 1) ? 2 : 0;
    } else if (c >= 0xE0 && c <= 0xEF) {
      if (continuation(i + 1) && continuation(i + 2)) {
        const unsigned char c1 = byte(i + 1);
        const bool overlong = c == 0xE0 && c1 < 0xA0;
        const bool surrogate = c == 0xED && c1 >= 0xA0;
        len = (overlong || surrogate) ? 0 : 3;
      }
    } else if (c >= 0xF0 && c <= 0xF4) {
      if (continuation(i + 1) && continuation(i + 2) && continuation(i + 3)) {
        const unsigned char c1 = byte(i + 1);
        const bool overlong = c == 0xF0 && c1 < 0x90;
        const bool too_big = c == 0xF4 && c1 >= 0x90;
        len = (overlong || too_big) ? 0 : 4;
      }
    }
    if (len == 0) {
      out.append(kReplacement);
      ++i;
    } else {
      out.append(bytes.substr(i, len));
      i += len;
    }
  }
  return out;
}

ParseOutcome parse_file(const ParserDescriptor& descriptor, const std::string& file_path,
                        std::string_view file_bytes, std::string_view display_path) {
  const std::string shown(display_path.empty() ? std::string_view(file_path) : display_path);
  if (descriptor.kind == ParserKind::kForeignSubprocess) {
    return run_foreign_parser(*descriptor.command, file_path, descriptor.timeout, shown);
  }

  const std::string& grammar = *descriptor.grammar_ref;
  if (grammar != "java") {
    return SkipEvent{shown, "unknown grammar '" + grammar + "'", std::nullopt};
  }
  const std::string text = decode_utf8_lossy(file_bytes);
  try {
    return java::parse(text);
  } catch (const java::SyntaxError& e) {
    return SkipEvent{shown, std::string("syntax error at ") + e.what(), std::nullopt};
  }
}

}  // namespace treeforge
