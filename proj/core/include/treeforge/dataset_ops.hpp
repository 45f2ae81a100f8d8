#pragma once

#include <compare>
#include <cstddef>
#include <filesystem>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "treeforge/sample.hpp"
#include "treeforge/wire.hpp"

namespace treeforge {

class DatasetOpsError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Identifies a method across parsers. Ordered by file path, then range.
struct MethodKey {
  std::string file_path;
  SourceRange range;

  auto operator<=>(const MethodKey&) const = default;
  bool operator==(const MethodKey&) const = default;
};

MethodKey key_of(const LabeledSample& sample);
/// "path:L:C-L:C"
std::string to_string(const MethodKey& key);

struct Dataset {
  std::string id;  // usually the parser id
  std::vector<LabeledSample> samples;
};

struct IntersectReport {
  std::size_t retained = 0;
  std::vector<std::pair<std::string, std::size_t>> dropped_per_dataset;  // input order

  /// {"retained": n, "droppedPerDataset": {id: n, ...}}
  [[nodiscard]] OrderedJson to_json() const;
};

struct IntersectResult {
  std::vector<Dataset> datasets;  // same order as the input, canonical sample order
  IntersectReport report;
};

/// Keeps in every dataset exactly the samples whose key occurs in all of
/// them. Throws DatasetOpsError for fewer than two datasets or for a key that
/// appears twice within one dataset (the message names the key).
IntersectResult intersect(std::vector<Dataset> datasets);

/// Shrinks `range` to its first and last non-whitespace byte in `file_text`.
/// Ranges outside the text or covering only whitespace are returned as is.
SourceRange trim_range(const SourceRange& range, std::string_view file_text);

struct SplitSpec {
  std::set<std::string> train;
  std::set<std::string> validation;
  std::set<std::string> test;

  /// Throws DatasetOpsError when a project is listed in two sets.
  void validate() const;
};

/// YAML mapping with optional `train`, `validation` and `test` lists.
SplitSpec load_split_spec(const std::filesystem::path& path);

struct SplitStreams {
  std::vector<LabeledSample> train;
  std::vector<LabeledSample> validation;
  std::vector<LabeledSample> test;
  std::size_t dropped = 0;
};

/// First "/"-separated component of the path.
std::string project_of(std::string_view file_path);

SplitStreams assign_splits(std::vector<LabeledSample> samples, const SplitSpec& spec);

}  // namespace treeforge
