#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "treeforge/config.hpp"
#include "treeforge/label_mapping.hpp"
#include "treeforge/sample.hpp"
#include "treeforge/wire.hpp"

namespace treeforge {

struct DatasetSummary {
  std::size_t files_seen = 0;
  std::size_t files_skipped = 0;
  std::size_t methods_extracted = 0;
  std::size_t methods_filtered = 0;
  std::size_t method_skips = 0;
  std::size_t samples_written = 0;
  std::map<std::string, std::size_t> filtered_by;  // filter name -> count
  std::vector<SkipEvent> skip_events;              // file order, then position

  /// Adds the counts of `other`; skip events are appended.
  DatasetSummary& operator+=(const DatasetSummary& other);
  [[nodiscard]] OrderedJson to_json() const;
};

/// Everything one corpus file contributes to the dataset.
struct FileResult {
  std::vector<LabeledSample> samples;        // canonical (range) order
  std::vector<std::string> path_context_lines;  // parallel to samples when requested
  DatasetSummary summary;
};

/// Corpus-relative, "/"-separated paths of all files with a configured
/// extension, sorted bytewise. Throws ConfigError if the root is unreadable.
std::vector<std::string> discover_files(const PipelineConfig& config);

/// Parses, splits, labels, masks, normalizes and filters one file.
FileResult process_file(const PipelineConfig& config, const LabelMapping& mapping,
                        const std::string& relative_path);

/// Runs the whole pipeline and writes the configured outputs. Output files
/// depend only on the corpus and the configuration, never on the worker count.
DatasetSummary run_pipeline(const PipelineConfig& config);

}  // namespace treeforge
