#include "treeforge/dataset_store.hpp"

#include <array>
#include <fstream>
#include <istream>
#include <ostream>

#include "treeforge/random.hpp"

namespace treeforge {
namespace {

constexpr std::array<const char*, 7> kSampleKeys = {
    "label", "labelSubtokens", "path", "range", "parserId", "normalized", "tree"};

const nlohmann::json& field(const nlohmann::json& obj, const char* key) {
  const auto it = obj.find(key);
  if (it == obj.end()) throw DatasetError(std::string("missing field ") + key);
  return *it;
}

std::vector<std::string> split(std::string_view text, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    const auto pos = text.find(sep, start);
    out.emplace_back(text.substr(start, pos - start));
    if (pos == std::string_view::npos) return out;
    start = pos + 1;
  }
}

std::string join_sanitized(const std::vector<std::string>& parts) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += '|';
    out += sanitize_context_token(parts[i]);
  }
  return out;
}

}  // namespace

OrderedJson sample_to_json(const LabeledSample& sample) {
  OrderedJson j;
  j["label"] = sample.label;
  j["labelSubtokens"] = sample.label_subtokens;
  j["path"] = sample.file_path;
  j["range"] = range_to_wire(sample.range);
  j["parserId"] = sample.parser_id;
  j["normalized"] = sample.normalized;
  j["tree"] = to_wire(sample.tree);
  return j;
}

LabeledSample sample_from_json(const nlohmann::json& value) {
  if (!value.is_object()) throw DatasetError("record is not a JSON object");
  for (const char* key : kSampleKeys) field(value, key);
  LabeledSample s;
  try {
    s.label = field(value, "label").get<std::string>();
    s.label_subtokens = field(value, "labelSubtokens").get<std::vector<std::string>>();
    s.file_path = field(value, "path").get<std::string>();
    s.parser_id = field(value, "parserId").get<std::string>();
    s.normalized = field(value, "normalized").get<bool>();
  } catch (const nlohmann::json::exception& e) {
    throw DatasetError(std::string("wrong field type: ") + e.what());
  }
  try {
    const auto range = range_from_wire(field(value, "range"));
    if (!range) throw DatasetError("range must not be null");
    s.range = *range;
    s.tree = from_wire(field(value, "tree"));
  } catch (const WireError& e) {
    throw DatasetError(e.what());
  }
  return s;
}

std::string format_jsonl_line(const LabeledSample& sample) {
  // Non-ASCII stays raw UTF-8; control characters are escaped by dump().
  return sample_to_json(sample).dump(-1, ' ', false, nlohmann::json::error_handler_t::replace);
}

std::size_t write_jsonl(const std::vector<LabeledSample>& samples, std::ostream& sink) {
  std::size_t n = 0;
  for (const auto& s : samples) {
    sink << format_jsonl_line(s) << '\n';
    if (!sink) throw std::runtime_error("write failed");
    ++n;
  }
  return n;
}

std::vector<LabeledSample> read_jsonl(std::istream& source) {
  std::vector<LabeledSample> out;
  std::string line;
  std::size_t number = 0;
  while (std::getline(source, line)) {
    ++number;
    const auto where = "line " + std::to_string(number) + ": ";
    nlohmann::json value;
    try {
      value = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      throw DatasetError(where + "malformed JSON: " + e.what());
    }
    try {
      out.push_back(sample_from_json(value));
    } catch (const DatasetError& e) {
      throw DatasetError(where + e.what());
    }
  }
  return out;
}

std::vector<LabeledSample> read_jsonl_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  try {
    return read_jsonl(in);
  } catch (const DatasetError& e) {
    throw DatasetError(path.string() + ": " + e.what());
  }
}

std::string sanitize_context_token(std::string_view token) {
  std::string out(token);
  for (char& c : out) {
    const auto u = static_cast<unsigned char>(c);
    if (c == ',' || c == '|' || u <= 0x20 || u == 0x7F) c = '_';
  }
  return out;
}

std::uint64_t sample_stream_seed(std::uint64_t base, const LabeledSample& sample) {
  const auto& r = sample.range;
  std::uint64_t h = fnv1a(sample.file_path);
  h = fnv1a(std::to_string(r.start_line) + ':' + std::to_string(r.start_column) + '-' +
                std::to_string(r.end_line) + ':' + std::to_string(r.end_column),
            h);
  return derive_seed(base, h);
}

std::string format_path_context_line(const std::vector<std::string>& label_subtokens,
                                     const std::vector<PathContext>& contexts) {
  std::string line = join_sanitized(label_subtokens);
  for (const auto& ctx : contexts) {
    line += ' ';
    line += join_sanitized(ctx.start_subtokens);
    line += ',';
    line += join_sanitized(ctx.path_types);
    line += ',';
    line += join_sanitized(ctx.end_subtokens);
  }
  return line;
}

std::string path_context_line(const LabeledSample& sample, const PathParams& params) {
  PathParams p = params;
  p.sample_seed = sample_stream_seed(params.sample_seed, sample);
  return format_path_context_line(sample.label_subtokens, extract_path_contexts(sample.tree, p));
}

std::size_t write_path_context_file(const std::vector<LabeledSample>& samples,
                                    const PathParams& params, std::ostream& sink) {
  params.validate();
  std::size_t n = 0;
  for (const auto& s : samples) {
    sink << path_context_line(s, params) << '\n';
    if (!sink) throw std::runtime_error("write failed");
    ++n;
  }
  return n;
}

PathContextLine parse_path_context_line(std::string_view line) {
  PathContextLine out;
  const auto fields = split(line, ' ');
  out.label_subtokens = split(fields.front(), '|');
  if (fields.front().empty()) out.label_subtokens.clear();
  for (std::size_t i = 1; i < fields.size(); ++i) {
    const auto parts = split(fields[i], ',');
    if (parts.size() != 3) throw DatasetError("malformed context '" + fields[i] + "'");
    out.contexts.push_back(PathContext{split(parts[0], '|'), split(parts[1], '|'), split(parts[2], '|')});
  }
  return out;
}

}  // namespace treeforge
