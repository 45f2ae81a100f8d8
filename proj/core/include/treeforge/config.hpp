#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "treeforge/parser.hpp"
#include "treeforge/path_contexts.hpp"

namespace treeforge {

/// Invalid or unreadable pipeline configuration. The CLI maps it to exit 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Granularity { kFile, kMethod };
enum class LabelExtractor { kMethodName, kFileName, kFolderName };

enum class FilterKind {
  kMaxTreeSize,
  kMaxTreeDepth,
  kExcludeAnnotations,
  kExcludeModifiers,
  kExcludeConstructors,
  kMinBodySize,
  kLabelMaxSubtokens,
  kLabelMinSubtokens,
  kLabelCharset,
};

std::string_view to_string(FilterKind kind);
std::optional<FilterKind> filter_kind_from_string(std::string_view name);

/// Integer limits, string lists (annotations, modifiers), a flag
/// (exclude_constructors) or a character class (label_charset).
using FilterArgument = std::variant<std::int64_t, bool, std::string, std::vector<std::string>>;

struct FilterSpec {
  FilterKind kind;
  FilterArgument argument;

  /// Throws ConfigError when the argument type does not fit the kind.
  void validate() const;
};

enum class OutputFormat { kJsonl, kPathContexts };

struct OutputSpec {
  std::filesystem::path directory;
  std::string name = "dataset";
  std::vector<OutputFormat> formats{OutputFormat::kJsonl};
  PathParams path_contexts;

  [[nodiscard]] bool wants(OutputFormat f) const;
  [[nodiscard]] std::filesystem::path jsonl_path() const { return directory / (name + ".jsonl"); }
  [[nodiscard]] std::filesystem::path path_contexts_path() const {
    return directory / (name + ".c2s");
  }
};

struct PipelineConfig {
  std::filesystem::path corpus_root;
  ParserDescriptor parser;
  /// Label table for the parser's trees; the built-in table for the language
  /// when unset.
  std::optional<std::filesystem::path> label_mapping;
  /// Recognized file extensions; defaults to the language's registration.
  std::vector<std::string> extensions;
  Granularity granularity = Granularity::kMethod;
  LabelExtractor label_extractor = LabelExtractor::kMethodName;
  std::vector<FilterSpec> filters;
  bool normalize = false;
  /// Also mask recursive call sites of the method name.
  bool mask_call_sites = false;
  OutputSpec output;
  int workers = 1;
  std::uint64_t seed = 0;

  /// Throws ConfigError on any inconsistency.
  void validate() const;
};

/// Parses a YAML configuration. Relative paths are resolved against
/// `base_dir`. Unknown keys at any level are rejected.
PipelineConfig parse_config(std::string_view yaml_text, const std::filesystem::path& base_dir);
PipelineConfig load_config(const std::filesystem::path& path);

}  // namespace treeforge
