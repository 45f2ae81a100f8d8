#include "treeforge/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <condition_variable>
#include <exception>
#include <fstream>
#include <mutex>
#include <sstream>
#include <system_error>
#include <thread>

#include <spdlog/spdlog.h>

#include "treeforge/dataset_store.hpp"
#include "treeforge/filters.hpp"
#include "treeforge/functions.hpp"
#include "treeforge/labels.hpp"
#include "treeforge/log.hpp"
#include "treeforge/normalize.hpp"
#include "treeforge/parser.hpp"
#include "treeforge/subtokens.hpp"

namespace fs = std::filesystem;

namespace treeforge {
namespace {

std::optional<std::string> read_bytes(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) return std::nullopt;
  return std::move(buf).str();
}

LabeledSample make_sample(const PipelineConfig& config, std::string label, AstNode tree,
                          const std::string& path, const SourceRange& range) {
  LabeledSample s;
  s.label_subtokens = split_subtokens(label);
  s.label = std::move(label);
  s.tree = config.normalize ? normalize(tree) : std::move(tree);
  s.file_path = path;
  s.range = range;
  s.parser_id = config.parser.parser_id;
  s.normalized = config.normalize;
  return s;
}

void keep_or_count(const PipelineConfig& config, LabeledSample sample, const FunctionInfo* info,
                   FileResult& out) {
  const FilterVerdict verdict = apply_filters(sample, info, config.filters);
  if (verdict.keep) {
    out.samples.push_back(std::move(sample));
  } else {
    ++out.summary.methods_filtered;
    ++out.summary.filtered_by[std::string(to_string(*verdict.rejected_by))];
  }
}

const LabelMapping& resolve_mapping(const PipelineConfig& config, std::optional<LabelMapping>& owned) {
  if (config.label_mapping) {
    try {
      owned = load_label_mapping(config.label_mapping->string());
    } catch (const std::exception& e) {
      throw ConfigError("label mapping " + config.label_mapping->string() + ": " + e.what());
    }
    return *owned;
  }
  try {
    return builtin_label_mapping(config.parser.language_id);
  } catch (const std::out_of_range&) {
    throw ConfigError("no label mapping for language '" + config.parser.language_id +
                      "'; set parser.label_mapping");
  }
}

}  // namespace

DatasetSummary& DatasetSummary::operator+=(const DatasetSummary& other) {
  files_seen += other.files_seen;
  files_skipped += other.files_skipped;
  methods_extracted += other.methods_extracted;
  methods_filtered += other.methods_filtered;
  method_skips += other.method_skips;
  samples_written += other.samples_written;
  for (const auto& [name, n] : other.filtered_by) filtered_by[name] += n;
  skip_events.insert(skip_events.end(), other.skip_events.begin(), other.skip_events.end());
  return *this;
}

OrderedJson DatasetSummary::to_json() const {
  OrderedJson j;
  j["files_seen"] = files_seen;
  j["files_skipped"] = files_skipped;
  j["methods_extracted"] = methods_extracted;
  j["methods_filtered"] = methods_filtered;
  j["method_skips"] = method_skips;
  j["samples_written"] = samples_written;
  j["filtered_by"] = OrderedJson::object();
  for (const auto& [name, n] : filtered_by) j["filtered_by"][name] = n;
  j["skip_events"] = OrderedJson::array();
  for (const auto& e : skip_events) {
    OrderedJson ev;
    ev["path"] = e.file_path;
    ev["message"] = e.message;
    ev["range"] = range_to_wire(e.range);
    j["skip_events"].push_back(std::move(ev));
  }
  return j;
}

std::vector<std::string> discover_files(const PipelineConfig& config) {
  std::error_code ec;
  if (!fs::is_directory(config.corpus_root, ec)) {
    throw ConfigError("corpus_root is not a readable directory: " + config.corpus_root.string());
  }
  std::vector<std::string> files;
  fs::recursive_directory_iterator it(config.corpus_root,
                                      fs::directory_options::skip_permission_denied, ec);
  if (ec) throw ConfigError("cannot read corpus_root " + config.corpus_root.string() + ": " + ec.message());
  for (; it != fs::recursive_directory_iterator(); it.increment(ec)) {
    if (ec) throw ConfigError("cannot walk corpus_root: " + ec.message());
    if (!it->is_regular_file(ec)) continue;
    const auto ext = it->path().extension().string();
    if (std::find(config.extensions.begin(), config.extensions.end(), ext) == config.extensions.end()) {
      continue;
    }
    files.push_back(it->path().lexically_relative(config.corpus_root).generic_string());
  }
  std::sort(files.begin(), files.end());
  return files;
}

FileResult process_file(const PipelineConfig& config, const LabelMapping& mapping,
                        const std::string& relative_path) {
  FileResult out;
  out.summary.files_seen = 1;
  const auto skip_file = [&](std::string message) {
    out.summary.files_skipped = 1;
    out.summary.skip_events.push_back(SkipEvent{relative_path, std::move(message), std::nullopt});
    return out;
  };

  const fs::path absolute = config.corpus_root / fs::path(relative_path);
  const auto bytes = read_bytes(absolute);
  if (!bytes) return skip_file("cannot read file");

  ParseOutcome parsed;
  try {
    parsed = parse_file(config.parser, absolute.string(), *bytes, relative_path);
  } catch (const std::exception& e) {
    return skip_file(e.what());
  }
  if (auto* skip = std::get_if<SkipEvent>(&parsed)) {
    out.summary.files_skipped = 1;
    out.summary.skip_events.push_back(std::move(*skip));
    return out;
  }
  const AstNode& tree = std::get<AstNode>(parsed);

  if (config.granularity == Granularity::kFile) {
    ++out.summary.methods_extracted;
    const std::string label = config.label_extractor == LabelExtractor::kFolderName
                                  ? folder_name_label(relative_path)
                                  : file_name_label(relative_path);
    keep_or_count(config, make_sample(config, label, tree, relative_path, tree.range.value_or(SourceRange{})),
                  nullptr, out);
  } else {
    SplitResult split = split_functions(tree, mapping, relative_path);
    out.summary.methods_extracted += split.functions.size() + split.skips.size();
    out.summary.method_skips += split.skips.size();
    for (auto& s : split.skips) out.summary.skip_events.push_back(std::move(s));
    for (const auto& info : split.functions) {
      ExtractedLabel ex = extract_label(info, config.label_extractor, config.mask_call_sites);
      keep_or_count(config, make_sample(config, std::move(ex.label), std::move(ex.tree), relative_path, info.range),
                    &info, out);
    }
  }

  std::stable_sort(out.samples.begin(), out.samples.end(),
                   [](const LabeledSample& a, const LabeledSample& b) { return a.range < b.range; });
  out.summary.samples_written = out.samples.size();
  if (config.output.wants(OutputFormat::kPathContexts)) {
    PathParams params = config.output.path_contexts;
    params.sample_seed = config.seed;
    for (const auto& s : out.samples) out.path_context_lines.push_back(path_context_line(s, params));
  }
  return out;
}

DatasetSummary run_pipeline(const PipelineConfig& config) {
  config.validate();
  std::optional<LabelMapping> owned;
  const LabelMapping& mapping = resolve_mapping(config, owned);
  const std::vector<std::string> files = discover_files(config);
  logger()->info("{} files under {}", files.size(), config.corpus_root.string());

  std::error_code ec;
  fs::create_directories(config.output.directory, ec);
  if (ec) throw std::runtime_error("cannot create " + config.output.directory.string() + ": " + ec.message());

  std::ofstream jsonl;
  std::ofstream contexts;
  const auto open = [](std::ofstream& s, const fs::path& p) {
    s.open(p, std::ios::binary | std::ios::trunc);
    if (!s) throw std::runtime_error("cannot open " + p.string() + " for writing");
  };
  if (config.output.wants(OutputFormat::kJsonl)) open(jsonl, config.output.jsonl_path());
  if (config.output.wants(OutputFormat::kPathContexts)) open(contexts, config.output.path_contexts_path());

  // Workers claim files by index; the calling thread writes finished files
  // strictly in index order so the output never depends on scheduling.
  std::vector<std::optional<FileResult>> slots(files.size());
  std::mutex mutex;
  std::condition_variable ready;
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;

  const auto work = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= files.size()) return;
      FileResult result;
      try {
        result = process_file(config, mapping, files[i]);
      } catch (...) {
        std::lock_guard lock(mutex);
        if (!failure) failure = std::current_exception();
        next = files.size();
        ready.notify_all();
        return;
      }
      std::lock_guard lock(mutex);
      slots[i] = std::move(result);
      ready.notify_all();
    }
  };

  const auto worker_count = static_cast<std::size_t>(
      std::max(1, std::min<int>(config.workers, static_cast<int>(std::max<std::size_t>(files.size(), 1)))));
  std::vector<std::thread> pool;
  pool.reserve(worker_count);
  for (std::size_t w = 0; w < worker_count; ++w) pool.emplace_back(work);

  DatasetSummary summary;
  std::exception_ptr write_failure;
  for (std::size_t i = 0; i < files.size(); ++i) {
    FileResult result;
    {
      std::unique_lock lock(mutex);
      ready.wait(lock, [&] { return slots[i].has_value() || failure; });
      if (!slots[i]) break;
      result = std::move(*slots[i]);
      slots[i].reset();
    }
    for (const auto& ev : result.summary.skip_events) {
      logger()->warn("skipped {}: {}", ev.file_path, ev.message);
    }
    try {
      if (jsonl.is_open()) {
        for (const auto& s : result.samples) jsonl << format_jsonl_line(s) << '\n';
        if (!jsonl) throw std::runtime_error("write to " + config.output.jsonl_path().string() + " failed");
      }
      if (contexts.is_open()) {
        for (const auto& line : result.path_context_lines) contexts << line << '\n';
        if (!contexts) throw std::runtime_error("write to " + config.output.path_contexts_path().string() + " failed");
      }
    } catch (...) {
      write_failure = std::current_exception();
      std::lock_guard lock(mutex);
      next = files.size();
      break;
    }
    summary += result.summary;
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
  if (write_failure) std::rethrow_exception(write_failure);

  if (jsonl.is_open()) jsonl.close();
  if (contexts.is_open()) contexts.close();
  if (jsonl.fail() || contexts.fail()) throw std::runtime_error("failed to flush dataset output");
  return summary;
}

}  // namespace treeforge
