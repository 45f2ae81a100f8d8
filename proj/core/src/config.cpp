#include "treeforge/config.hpp"

#include <algorithm>
#include <array>
#include <fstream>
#include <set>
#include <sstream>

#include <yaml-cpp/yaml.h>

namespace treeforge {
namespace {

constexpr std::array<std::pair<FilterKind, std::string_view>, 9> kFilterNames = {{
    {FilterKind::kMaxTreeSize, "max_tree_size"},
    {FilterKind::kMaxTreeDepth, "max_tree_depth"},
    {FilterKind::kExcludeAnnotations, "exclude_annotations"},
    {FilterKind::kExcludeModifiers, "exclude_modifiers"},
    {FilterKind::kExcludeConstructors, "exclude_constructors"},
    {FilterKind::kMinBodySize, "min_body_size"},
    {FilterKind::kLabelMaxSubtokens, "label_max_subtokens"},
    {FilterKind::kLabelMinSubtokens, "label_min_subtokens"},
    {FilterKind::kLabelCharset, "label_charset"},
}};

constexpr std::string_view kDefaultCharset = "A-Za-z0-9_";

enum class ArgType { kCount, kFlag, kText, kList };

ArgType arg_type(FilterKind kind) {
  switch (kind) {
    case FilterKind::kExcludeAnnotations:
    case FilterKind::kExcludeModifiers:
      return ArgType::kList;
    case FilterKind::kExcludeConstructors:
      return ArgType::kFlag;
    case FilterKind::kLabelCharset:
      return ArgType::kText;
    default:
      return ArgType::kCount;
  }
}

void check_keys(const YAML::Node& node, std::initializer_list<std::string_view> allowed,
                const std::string& where) {
  if (!node.IsMap()) throw ConfigError(where + ": expected a mapping");
  for (const auto& kv : node) {
    const auto key = kv.first.as<std::string>();
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      throw ConfigError("unknown key '" + (where.empty() ? key : where + "." + key) + "'");
    }
  }
}

template <typename T>
T scalar(const YAML::Node& node, const std::string& key) {
  try {
    return node.as<T>();
  } catch (const YAML::Exception&) {
    throw ConfigError("invalid value for '" + key + "'");
  }
}

YAML::Node required(const YAML::Node& parent, const char* key, const std::string& where) {
  YAML::Node n = parent[key];
  if (!n) throw ConfigError("missing required key '" + (where.empty() ? key : where + "." + key) + "'");
  return n;
}

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& value) {
  std::filesystem::path p(value);
  return p.is_absolute() ? p : (base / p).lexically_normal();
}

std::vector<std::string> string_list(const YAML::Node& node, const std::string& key) {
  if (node.IsScalar()) return {scalar<std::string>(node, key)};
  if (!node.IsSequence()) throw ConfigError("invalid value for '" + key + "': expected a list");
  std::vector<std::string> out;
  for (const auto& item : node) out.push_back(scalar<std::string>(item, key));
  return out;
}

ParserDescriptor parse_parser(const YAML::Node& node, const std::filesystem::path& base,
                              std::optional<std::filesystem::path>& label_mapping) {
  check_keys(node,
             {"parser_id", "language_id", "kind", "grammar_ref", "command", "timeout_seconds",
              "label_mapping"},
             "parser");
  ParserDescriptor d;
  d.parser_id = scalar<std::string>(required(node, "parser_id", "parser"), "parser.parser_id");
  d.language_id = scalar<std::string>(required(node, "language_id", "parser"), "parser.language_id");
  const auto kind = scalar<std::string>(required(node, "kind", "parser"), "parser.kind");
  if (kind == "in_process_grammar") {
    d.kind = ParserKind::kInProcessGrammar;
  } else if (kind == "foreign_subprocess") {
    d.kind = ParserKind::kForeignSubprocess;
  } else {
    throw ConfigError("invalid value for 'parser.kind': " + kind);
  }
  if (node["grammar_ref"]) d.grammar_ref = scalar<std::string>(node["grammar_ref"], "parser.grammar_ref");
  if (node["command"]) {
    auto cmd = string_list(node["command"], "parser.command");
    if (!cmd.empty() && cmd.front().find('/') != std::string::npos) {
      cmd.front() = resolve(base, cmd.front()).string();
    }
    d.command = std::move(cmd);
  }
  if (node["timeout_seconds"]) {
    const auto secs = scalar<double>(node["timeout_seconds"], "parser.timeout_seconds");
    if (!(secs > 0)) throw ConfigError("invalid value for 'parser.timeout_seconds'");
    d.timeout = std::chrono::milliseconds(static_cast<std::int64_t>(secs * 1000.0));
  }
  if (node["label_mapping"]) {
    label_mapping = resolve(base, scalar<std::string>(node["label_mapping"], "parser.label_mapping"));
  }
  try {
    d.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("parser: ") + e.what());
  }
  return d;
}

FilterSpec parse_filter(const YAML::Node& node, std::size_t index) {
  const std::string where = "filters[" + std::to_string(index) + "]";
  check_keys(node, {"kind", "argument"}, where);
  const auto name = scalar<std::string>(required(node, "kind", where), where + ".kind");
  const auto kind = filter_kind_from_string(name);
  if (!kind) throw ConfigError("unknown filter kind '" + name + "'");

  const YAML::Node arg = node["argument"];
  const std::string key = where + ".argument";
  FilterSpec spec{*kind, std::int64_t{0}};
  switch (arg_type(*kind)) {
    case ArgType::kCount: {
      if (!arg) throw ConfigError("missing required key '" + key + "'");
      const auto v = scalar<std::int64_t>(arg, key);
      if (v < 0) throw ConfigError("invalid value for '" + key + "': must be non-negative");
      spec.argument = v;
      break;
    }
    case ArgType::kFlag:
      spec.argument = arg ? scalar<bool>(arg, key) : true;
      break;
    case ArgType::kText:
      spec.argument = arg ? scalar<std::string>(arg, key) : std::string(kDefaultCharset);
      break;
    case ArgType::kList:
      if (!arg) throw ConfigError("missing required key '" + key + "'");
      spec.argument = string_list(arg, key);
      break;
  }
  spec.validate();
  return spec;
}

OutputSpec parse_output(const YAML::Node& node, const std::filesystem::path& base) {
  check_keys(node, {"directory", "name", "formats", "path_contexts"}, "output");
  OutputSpec out;
  out.directory = resolve(base, scalar<std::string>(required(node, "directory", "output"), "output.directory"));
  if (node["name"]) out.name = scalar<std::string>(node["name"], "output.name");
  if (out.name.empty() || out.name.find('/') != std::string::npos) {
    throw ConfigError("invalid value for 'output.name'");
  }
  if (node["formats"]) {
    out.formats.clear();
    for (const auto& f : string_list(node["formats"], "output.formats")) {
      if (f == "jsonl") {
        out.formats.push_back(OutputFormat::kJsonl);
      } else if (f == "path_contexts") {
        out.formats.push_back(OutputFormat::kPathContexts);
      } else {
        throw ConfigError("invalid value for 'output.formats': " + f);
      }
    }
  }
  if (const YAML::Node pc = node["path_contexts"]) {
    check_keys(pc, {"max_length", "max_width", "max_contexts"}, "output.path_contexts");
    if (pc["max_length"]) out.path_contexts.max_length = scalar<int>(pc["max_length"], "output.path_contexts.max_length");
    if (pc["max_width"]) out.path_contexts.max_width = scalar<int>(pc["max_width"], "output.path_contexts.max_width");
    if (pc["max_contexts"]) out.path_contexts.max_contexts = scalar<int>(pc["max_contexts"], "output.path_contexts.max_contexts");
    try {
      out.path_contexts.validate();
    } catch (const std::invalid_argument& e) {
      throw ConfigError(std::string("output.path_contexts: ") + e.what());
    }
  }
  return out;
}

}  // namespace

std::string_view to_string(FilterKind kind) {
  for (const auto& [k, name] : kFilterNames) {
    if (k == kind) return name;
  }
  return "unknown";
}

std::optional<FilterKind> filter_kind_from_string(std::string_view name) {
  for (const auto& [k, n] : kFilterNames) {
    if (n == name) return k;
  }
  return std::nullopt;
}

void FilterSpec::validate() const {
  const bool ok = [&] {
    switch (arg_type(kind)) {
      case ArgType::kCount:
        return std::holds_alternative<std::int64_t>(argument) && std::get<std::int64_t>(argument) >= 0;
      case ArgType::kFlag:
        return std::holds_alternative<bool>(argument);
      case ArgType::kText:
        return std::holds_alternative<std::string>(argument) && !std::get<std::string>(argument).empty();
      case ArgType::kList:
        return std::holds_alternative<std::vector<std::string>>(argument);
    }
    return false;
  }();
  if (!ok) throw ConfigError("filter " + std::string(to_string(kind)) + ": argument has the wrong type");
}

bool OutputSpec::wants(OutputFormat f) const {
  return std::find(formats.begin(), formats.end(), f) != formats.end();
}

void PipelineConfig::validate() const {
  if (corpus_root.empty()) throw ConfigError("missing required key 'corpus_root'");
  if (output.directory.empty()) throw ConfigError("missing required key 'output.directory'");
  if (label_extractor == LabelExtractor::kMethodName && granularity != Granularity::kMethod) {
    throw ConfigError("label_extractor method_name requires granularity method");
  }
  if (workers < 1) throw ConfigError("workers must be positive");
  if (extensions.empty()) throw ConfigError("no file extensions configured for language '" + parser.language_id + "'");
  try {
    parser.validate();
    output.path_contexts.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  for (const auto& f : filters) f.validate();
}

PipelineConfig parse_config(std::string_view yaml_text, const std::filesystem::path& base_dir) {
  YAML::Node root;
  try {
    root = YAML::Load(std::string(yaml_text));
  } catch (const YAML::Exception& e) {
    throw ConfigError(std::string("malformed YAML: ") + e.what());
  }
  if (!root.IsMap()) throw ConfigError("configuration must be a mapping");
  check_keys(root,
             {"corpus_root", "parser", "extensions", "granularity", "label_extractor", "filters",
              "normalize", "mask_call_sites", "output", "workers", "seed"},
             "");

  PipelineConfig cfg;
  cfg.corpus_root = resolve(base_dir, scalar<std::string>(required(root, "corpus_root", ""), "corpus_root"));
  cfg.parser = parse_parser(required(root, "parser", ""), base_dir, cfg.label_mapping);

  if (root["extensions"]) {
    cfg.extensions = string_list(root["extensions"], "extensions");
  } else {
    cfg.extensions = default_extensions(cfg.parser.language_id);
  }
  if (const YAML::Node g = root["granularity"]) {
    const auto v = scalar<std::string>(g, "granularity");
    if (v == "file") {
      cfg.granularity = Granularity::kFile;
    } else if (v == "method") {
      cfg.granularity = Granularity::kMethod;
    } else {
      throw ConfigError("invalid value for 'granularity': " + v);
    }
  }
  if (const YAML::Node l = root["label_extractor"]) {
    const auto v = scalar<std::string>(l, "label_extractor");
    if (v == "method_name") {
      cfg.label_extractor = LabelExtractor::kMethodName;
    } else if (v == "file_name") {
      cfg.label_extractor = LabelExtractor::kFileName;
    } else if (v == "folder_name") {
      cfg.label_extractor = LabelExtractor::kFolderName;
    } else {
      throw ConfigError("invalid value for 'label_extractor': " + v);
    }
  }
  if (const YAML::Node f = root["filters"]) {
    if (!f.IsSequence()) throw ConfigError("invalid value for 'filters': expected a list");
    for (std::size_t i = 0; i < f.size(); ++i) cfg.filters.push_back(parse_filter(f[i], i));
  }
  if (root["normalize"]) cfg.normalize = scalar<bool>(root["normalize"], "normalize");
  if (root["mask_call_sites"]) cfg.mask_call_sites = scalar<bool>(root["mask_call_sites"], "mask_call_sites");
  cfg.output = parse_output(required(root, "output", ""), base_dir);
  if (root["workers"]) cfg.workers = scalar<int>(root["workers"], "workers");
  if (root["seed"]) cfg.seed = scalar<std::uint64_t>(root["seed"], "seed");
  cfg.validate();
  return cfg;
}

PipelineConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read config file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  const auto base = std::filesystem::absolute(path).parent_path();
  return parse_config(buf.str(), base);
}

}  // namespace treeforge
