#include "treeforge/dataset_ops.hpp"

#include <algorithm>
#include <optional>

#include <yaml-cpp/yaml.h>

namespace treeforge {
namespace {

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v'; }

/// Byte offset of the start of every line (1-based line i starts at starts[i-1]).
std::vector<std::size_t> line_starts(std::string_view text) {
  std::vector<std::size_t> starts{0};
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] == '\n') starts.push_back(i + 1);
  }
  return starts;
}

}  // namespace

MethodKey key_of(const LabeledSample& sample) { return MethodKey{sample.file_path, sample.range}; }

std::string to_string(const MethodKey& key) {
  const auto& r = key.range;
  return key.file_path + ':' + std::to_string(r.start_line) + ':' + std::to_string(r.start_column) + '-' +
         std::to_string(r.end_line) + ':' + std::to_string(r.end_column);
}

OrderedJson IntersectReport::to_json() const {
  OrderedJson j;
  j["retained"] = retained;
  j["droppedPerDataset"] = OrderedJson::object();
  for (const auto& [id, n] : dropped_per_dataset) j["droppedPerDataset"][id] = n;
  return j;
}

IntersectResult intersect(std::vector<Dataset> datasets) {
  if (datasets.size() < 2) throw DatasetOpsError("intersection needs at least two datasets");

  const auto by_key = [](const LabeledSample& a, const LabeledSample& b) {
    return key_of(a) < key_of(b);
  };
  for (auto& d : datasets) {
    std::stable_sort(d.samples.begin(), d.samples.end(), by_key);
    const auto dup = std::adjacent_find(d.samples.begin(), d.samples.end(),
                                        [](const LabeledSample& a, const LabeledSample& b) {
                                          return key_of(a) == key_of(b);
                                        });
    if (dup != d.samples.end()) {
      throw DatasetOpsError("duplicate method key " + to_string(key_of(*dup)) + " in dataset " + d.id);
    }
  }

  // Merge-join of all sorted key sequences.
  std::vector<MethodKey> common;
  std::vector<std::size_t> pos(datasets.size(), 0);
  for (;;) {
    bool exhausted = false;
    MethodKey highest;
    for (std::size_t d = 0; d < datasets.size(); ++d) {
      if (pos[d] >= datasets[d].samples.size()) {
        exhausted = true;
        break;
      }
      MethodKey k = key_of(datasets[d].samples[pos[d]]);
      if (d == 0 || highest < k) highest = std::move(k);
    }
    if (exhausted) break;
    bool all_equal = true;
    for (std::size_t d = 0; d < datasets.size(); ++d) {
      while (pos[d] < datasets[d].samples.size() && key_of(datasets[d].samples[pos[d]]) < highest) ++pos[d];
      if (pos[d] >= datasets[d].samples.size() || key_of(datasets[d].samples[pos[d]]) != highest) {
        all_equal = false;
      }
    }
    if (all_equal) {
      common.push_back(highest);
      for (auto& p : pos) ++p;
    }
  }

  IntersectResult result;
  result.report.retained = common.size();
  for (auto& d : datasets) {
    Dataset kept{d.id, {}};
    kept.samples.reserve(common.size());
    std::size_t c = 0;
    for (auto& s : d.samples) {
      while (c < common.size() && common[c] < key_of(s)) ++c;
      if (c < common.size() && common[c] == key_of(s)) kept.samples.push_back(std::move(s));
    }
    result.report.dropped_per_dataset.emplace_back(d.id, d.samples.size() - kept.samples.size());
    result.datasets.push_back(std::move(kept));
  }
  return result;
}

SourceRange trim_range(const SourceRange& range, std::string_view file_text) {
  const auto starts = line_starts(file_text);
  const auto offset = [&](int line, int column) -> std::optional<std::size_t> {
    if (line < 1 || static_cast<std::size_t>(line) > starts.size() || column < 0) return std::nullopt;
    const std::size_t o = starts[static_cast<std::size_t>(line - 1)] + static_cast<std::size_t>(column);
    if (o > file_text.size()) return std::nullopt;
    return o;
  };
  const auto begin = offset(range.start_line, range.start_column);
  const auto end = offset(range.end_line, range.end_column);
  if (!begin || !end || *begin > *end) return range;

  std::size_t b = *begin;
  std::size_t e = *end;
  while (b < e && is_space(file_text[b])) ++b;
  while (e > b && is_space(file_text[e - 1])) --e;
  if (b == e) return range;

  const auto locate = [&](std::size_t o) {
    const auto it = std::upper_bound(starts.begin(), starts.end(), o);
    const auto line = static_cast<std::size_t>(it - starts.begin());
    return std::pair{static_cast<int>(line), static_cast<int>(o - starts[line - 1])};
  };
  const auto [sl, sc] = locate(b);
  const auto [el, ec] = locate(e);
  return SourceRange{sl, sc, el, ec};
}

void SplitSpec::validate() const {
  const auto check = [](const std::set<std::string>& a, const std::set<std::string>& b, const char* an,
                        const char* bn) {
    for (const auto& p : a) {
      if (b.contains(p)) {
        throw DatasetOpsError("project '" + p + "' listed in both " + an + " and " + bn);
      }
    }
  };
  check(train, validation, "train", "validation");
  check(train, test, "train", "test");
  check(validation, test, "validation", "test");
}

SplitSpec load_split_spec(const std::filesystem::path& path) {
  YAML::Node root;
  try {
    root = YAML::LoadFile(path.string());
  } catch (const YAML::Exception& e) {
    throw DatasetOpsError("cannot load split spec " + path.string() + ": " + e.what());
  }
  if (!root.IsMap()) throw DatasetOpsError("split spec must be a mapping");
  SplitSpec spec;
  for (const auto& kv : root) {
    const auto key = kv.first.as<std::string>();
    std::set<std::string>* target = key == "train"        ? &spec.train
                                    : key == "validation" ? &spec.validation
                                    : key == "test"       ? &spec.test
                                                          : nullptr;
    if (!target) throw DatasetOpsError("unknown key '" + key + "' in split spec");
    if (!kv.second.IsSequence()) throw DatasetOpsError("split spec '" + key + "' must be a list");
    for (const auto& item : kv.second) target->insert(item.as<std::string>());
  }
  spec.validate();
  return spec;
}

std::string project_of(std::string_view file_path) {
  return std::string(file_path.substr(0, file_path.find('/')));
}

SplitStreams assign_splits(std::vector<LabeledSample> samples, const SplitSpec& spec) {
  spec.validate();
  SplitStreams out;
  for (auto& s : samples) {
    const std::string project = project_of(s.file_path);
    if (spec.train.contains(project)) {
      out.train.push_back(std::move(s));
    } else if (spec.validation.contains(project)) {
      out.validation.push_back(std::move(s));
    } else if (spec.test.contains(project)) {
      out.test.push_back(std::move(s));
    } else {
      ++out.dropped;
    }
  }
  return out;
}

}  // namespace treeforge
