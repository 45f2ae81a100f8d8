#pragma once

#include <set>
#include <string>
#include <string_view>

namespace treeforge {

/// Which type labels of a backend's trees denote the elements the function
/// splitter needs. Loaded from the per-grammar YAML tables in core/labels/.
struct LabelMapping {
  std::string language_id;
  using LabelSet = std::set<std::string, std::less<>>;

  LabelSet method_declaration;
  LabelSet constructor_declaration;
  LabelSet type_declaration;
  LabelSet name;
  LabelSet modifier;
  LabelSet annotation;
  LabelSet annotation_name;
  LabelSet parameter;
  LabelSet type;
  LabelSet body;

  [[nodiscard]] bool is_function(std::string_view label) const {
    return method_declaration.contains(label) || constructor_declaration.contains(label);
  }
};

/// Parses a mapping table. Throws std::invalid_argument on unknown keys or a
/// missing required key.
LabelMapping parse_label_mapping(std::string_view yaml_text);
LabelMapping load_label_mapping(const std::string& path);

/// The mapping shipped for a language; throws std::out_of_range if none.
const LabelMapping& builtin_label_mapping(std::string_view language_id);

}  // namespace treeforge
