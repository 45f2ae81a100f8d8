#include "treeforge/filters.hpp"

#include <algorithm>

#include "treeforge/metrics.hpp"

namespace treeforge {
namespace {

bool any_listed(const std::vector<std::string>& values, const std::vector<std::string>& listed) {
  return std::any_of(values.begin(), values.end(), [&](const std::string& v) {
    return std::find(listed.begin(), listed.end(), v) != listed.end();
  });
}

/// "java.lang.Override" and "Override" both match the listed "Override".
std::string simple_name(const std::string& qualified) {
  const auto dot = qualified.rfind('.');
  return dot == std::string::npos ? qualified : qualified.substr(dot + 1);
}

bool passes(const FilterSpec& f, const LabeledSample& s, const FunctionInfo* info) {
  const auto count = [&] { return static_cast<std::size_t>(std::get<std::int64_t>(f.argument)); };
  switch (f.kind) {
    case FilterKind::kMaxTreeSize:
      return tree_size(s.tree) <= count();
    case FilterKind::kMaxTreeDepth:
      return tree_depth(s.tree) <= count();
    case FilterKind::kLabelMaxSubtokens:
      return s.label_subtokens.size() <= count();
    case FilterKind::kLabelMinSubtokens:
      return s.label_subtokens.size() >= count();
    case FilterKind::kLabelCharset:
      return label_in_charset(s.label, std::get<std::string>(f.argument));
    case FilterKind::kMinBodySize:
      return info == nullptr || info->body_size >= count();
    case FilterKind::kExcludeConstructors:
      return info == nullptr || !std::get<bool>(f.argument) || !info->is_constructor;
    case FilterKind::kExcludeModifiers:
      return info == nullptr ||
             !any_listed(info->modifiers, std::get<std::vector<std::string>>(f.argument));
    case FilterKind::kExcludeAnnotations: {
      if (info == nullptr) return true;
      std::vector<std::string> names;
      for (const auto& a : info->annotations) names.push_back(simple_name(a));
      std::vector<std::string> listed;
      for (const auto& a : std::get<std::vector<std::string>>(f.argument)) listed.push_back(simple_name(a));
      return !any_listed(names, listed);
    }
  }
  return true;
}

}  // namespace

FilterVerdict apply_filters(const LabeledSample& sample, const FunctionInfo* info,
                            const std::vector<FilterSpec>& filters) {
  for (const auto& f : filters) {
    if (!passes(f, sample, info)) return {false, f.kind};
  }
  return {};
}

std::bitset<256> parse_charset(std::string_view spec) {
  std::bitset<256> set;
  std::size_t i = 0;
  const auto next = [&]() -> unsigned char {
    if (spec[i] == '\\' && i + 1 < spec.size()) ++i;
    return static_cast<unsigned char>(spec[i++]);
  };
  while (i < spec.size()) {
    const unsigned char lo = next();
    if (i + 1 < spec.size() && spec[i] == '-') {
      ++i;
      const unsigned char hi = next();
      for (unsigned c = lo; c <= hi; ++c) set.set(c);
    } else {
      set.set(lo);
    }
  }
  return set;
}

bool label_in_charset(std::string_view label, std::string_view spec) {
  const auto set = parse_charset(spec);
  return std::all_of(label.begin(), label.end(),
                     [&](char c) { return set.test(static_cast<unsigned char>(c)); });
}

}  // namespace treeforge
