#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "treeforge/path_contexts.hpp"
#include "treeforge/sample.hpp"
#include "treeforge/wire.hpp"

namespace treeforge {

/// Malformed dataset input. Messages start with "line N: ".
class DatasetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// {"label", "labelSubtokens", "path", "range", "parserId", "normalized", "tree"}
OrderedJson sample_to_json(const LabeledSample& sample);
/// Unknown top-level keys are ignored; a missing one throws
/// DatasetError("missing field <key>").
LabeledSample sample_from_json(const nlohmann::json& value);

/// One JSON object, no trailing newline.
std::string format_jsonl_line(const LabeledSample& sample);

std::size_t write_jsonl(const std::vector<LabeledSample>& samples, std::ostream& sink);
std::vector<LabeledSample> read_jsonl(std::istream& source);
std::vector<LabeledSample> read_jsonl_file(const std::filesystem::path& path);

/// Replaces ',', ' ', '|' and any other whitespace or control byte with '_'.
std::string sanitize_context_token(std::string_view token);

/// Sampling seed for one sample's path contexts: mixes `base` with the
/// sample's (file_path, range) so it does not depend on processing order.
std::uint64_t sample_stream_seed(std::uint64_t base, const LabeledSample& sample);

/// `label|subtokens ctx ctx ...`, each ctx `start,path,end` with parts
/// joined by '|'.
std::string format_path_context_line(const std::vector<std::string>& label_subtokens,
                                     const std::vector<PathContext>& contexts);

/// Extracts the sample's contexts (params.sample_seed is the base seed) and
/// renders them as one line.
std::string path_context_line(const LabeledSample& sample, const PathParams& params);

std::size_t write_path_context_file(const std::vector<LabeledSample>& samples,
                                    const PathParams& params, std::ostream& sink);

struct PathContextLine {
  std::vector<std::string> label_subtokens;
  std::vector<PathContext> contexts;

  friend bool operator==(const PathContextLine&, const PathContextLine&) = default;
};

/// Inverse of format_path_context_line for sanitized input. Throws
/// DatasetError on a malformed context.
PathContextLine parse_path_context_line(std::string_view line);

}  // namespace treeforge
