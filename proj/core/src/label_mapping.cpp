#include "treeforge/label_mapping.hpp"

#include <array>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>

#include <yaml-cpp/yaml.h>

namespace treeforge {
namespace detail {
extern const std::array<std::pair<std::string_view, std::string_view>, 1> kBuiltinLabelTables;
}  // namespace detail

namespace {

using LabelSet = std::set<std::string, std::less<>>;

struct Field {
  const char* key;
  LabelSet LabelMapping::*member;
  bool required;
};

constexpr std::array<Field, 10> kFields = {{
    {"method_declaration", &LabelMapping::method_declaration, true},
    {"constructor_declaration", &LabelMapping::constructor_declaration, false},
    {"type_declaration", &LabelMapping::type_declaration, false},
    {"name", &LabelMapping::name, true},
    {"modifier", &LabelMapping::modifier, false},
    {"annotation", &LabelMapping::annotation, false},
    {"annotation_name", &LabelMapping::annotation_name, false},
    {"parameter", &LabelMapping::parameter, false},
    {"type", &LabelMapping::type, false},
    {"body", &LabelMapping::body, false},
}};

}  // namespace

LabelMapping parse_label_mapping(std::string_view yaml_text) {
  YAML::Node root;
  try {
    root = YAML::Load(std::string(yaml_text));
  } catch (const YAML::Exception& e) {
    throw std::invalid_argument(std::string("label mapping: ") + e.what());
  }
  if (!root.IsMap()) throw std::invalid_argument("label mapping: expected a mapping");

  LabelMapping mapping;
  for (const auto& entry : root) {
    const auto key = entry.first.as<std::string>();
    if (key == "language_id") {
      mapping.language_id = entry.second.as<std::string>();
      continue;
    }
    const Field* field = nullptr;
    for (const auto& f : kFields) {
      if (key == f.key) field = &f;
    }
    if (!field) throw std::invalid_argument("label mapping: unknown key '" + key + "'");
    if (!entry.second.IsSequence()) {
      throw std::invalid_argument("label mapping: '" + key + "' must be a list");
    }
    for (const auto& label : entry.second) (mapping.*(field->member)).insert(label.as<std::string>());
  }
  for (const auto& f : kFields) {
    if (f.required && (mapping.*(f.member)).empty()) {
      throw std::invalid_argument(std::string("label mapping: missing key '") + f.key + "'");
    }
  }
  return mapping;
}

LabelMapping load_label_mapping(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot read label mapping " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_label_mapping(buffer.str());
}

const LabelMapping& builtin_label_mapping(std::string_view language_id) {
  static const std::map<std::string, LabelMapping, std::less<>> tables = [] {
    std::map<std::string, LabelMapping, std::less<>> out;
    for (const auto& [lang, text] : detail::kBuiltinLabelTables) {
      out.emplace(std::string(lang), parse_label_mapping(text));
    }
    return out;
  }();
  auto it = tables.find(language_id);
  if (it == tables.end()) {
    throw std::out_of_range("no built-in label mapping for language '" +
                            std::string(language_id) + "'");
  }
  return it->second;
}

}  // namespace treeforge
