#include "treeforge/wire.hpp"

#include <set>
#include <string>
#include <utility>
#include <vector>

namespace treeforge {
namespace {

template <typename Json>
const Json& require(const Json& obj, const char* key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) throw WireError(where + ": missing key \"" + key + "\"");
  return *it;
}

template <typename Json>
void reject_unknown_keys(const Json& obj, std::initializer_list<std::string_view> allowed,
                         const std::string& where) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool known = false;
    for (auto k : allowed) known = known || it.key() == k;
    if (!known) throw WireError(where + ": unexpected key \"" + it.key() + "\"");
  }
}

template <typename Json>
int integer(const Json& value, const std::string& where) {
  if (!value.is_number_integer()) throw WireError(where + ": expected integer");
  const auto v = value.template get<long long>();
  if (v < 0 || v > 1'000'000'000) throw WireError(where + ": out of range");
  return static_cast<int>(v);
}

template <typename Json>
std::pair<int, int> position(const Json& value, const std::string& where) {
  if (!value.is_object()) throw WireError(where + ": expected object");
  reject_unknown_keys(value, {"line", "column"}, where);
  return {integer(require(value, "line", where), where + ".line"),
          integer(require(value, "column", where), where + ".column")};
}

template <typename Json>
std::optional<SourceRange> range_of(const Json& value, const std::string& where) {
  if (value.is_null()) return std::nullopt;
  if (!value.is_object()) throw WireError(where + ": expected object or null");
  reject_unknown_keys(value, {"start", "end"}, where);
  auto [sl, sc] = position(require(value, "start", where), where + ".start");
  auto [el, ec] = position(require(value, "end", where), where + ".end");
  SourceRange r{sl, sc, el, ec};
  if (!r.valid()) throw WireError(where + ": start after end or line < 1");
  return r;
}

// Iterative so that adversarially deep documents cannot exhaust the stack.
template <typename Json>
AstNode convert(const Json& root) {
  struct Frame {
    const Json* json;
    AstNode* node;
    std::string where;
  };
  AstNode out;
  std::vector<Frame> stack{{&root, &out, "$"}};
  while (!stack.empty()) {
    Frame f = std::move(stack.back());
    stack.pop_back();
    const Json& j = *f.json;
    if (!j.is_object()) throw WireError(f.where + ": node must be an object");
    reject_unknown_keys(j, {"typeLabel", "token", "range", "children"}, f.where);

    const Json& type = require(j, "typeLabel", f.where);
    if (!type.is_string() || type.template get_ref<const std::string&>().empty()) {
      throw WireError(f.where + ".typeLabel: expected non-empty string");
    }
    f.node->type_label = type.template get<std::string>();

    const Json& token = require(j, "token", f.where);
    if (token.is_string()) {
      f.node->token = token.template get<std::string>();
    } else if (!token.is_null()) {
      throw WireError(f.where + ".token: expected string or null");
    }

    f.node->range = range_of(require(j, "range", f.where), f.where + ".range");

    const Json& children = require(j, "children", f.where);
    if (!children.is_array()) throw WireError(f.where + ".children: expected array");
    f.node->children.resize(children.size());
    for (std::size_t i = 0; i < children.size(); ++i) {
      stack.push_back({&children[i], &f.node->children[i],
                       f.where + ".children[" + std::to_string(i) + "]"});
    }
  }
  return out;
}

}  // namespace

OrderedJson range_to_wire(const std::optional<SourceRange>& range) {
  if (!range) return nullptr;
  OrderedJson r;
  r["start"] = {{"line", range->start_line}, {"column", range->start_column}};
  r["end"] = {{"line", range->end_line}, {"column", range->end_column}};
  return r;
}

OrderedJson to_wire(const AstNode& node) {
  OrderedJson j;
  j["typeLabel"] = node.type_label;
  j["token"] = node.token ? OrderedJson(*node.token) : OrderedJson(nullptr);
  j["range"] = range_to_wire(node.range);
  OrderedJson children = OrderedJson::array();
  for (const auto& child : node.children) children.push_back(to_wire(child));
  j["children"] = std::move(children);
  return j;
}

AstNode from_wire(const nlohmann::json& value) { return convert(value); }
AstNode from_wire(const OrderedJson& value) { return convert(value); }

std::optional<SourceRange> range_from_wire(const nlohmann::json& value) {
  return range_of(value, "range");
}

AstNode parse_wire_document(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw WireError(std::string("invalid JSON: ") + e.what());
  }
  return from_wire(doc);
}

std::optional<std::string> check_ranges(const AstNode& root) {
  std::optional<std::string> problem;
  std::vector<const AstNode*> stack{&root};
  while (!stack.empty() && !problem) {
    const AstNode* node = stack.back();
    stack.pop_back();
    if (node->range && !node->range->valid()) {
      problem = "malformed range on " + node->type_label;
      break;
    }
    const SourceRange* previous = nullptr;
    for (const auto& child : node->children) {
      if (!child.range) continue;
      if (node->range && !node->range->contains(*child.range)) {
        problem = child.type_label + " range escapes its parent " + node->type_label;
        break;
      }
      if (previous && std::pair{previous->end_line, previous->end_column} >
                          std::pair{child.range->start_line, child.range->start_column}) {
        problem = child.type_label + " range overlaps or precedes its left sibling under " +
                  node->type_label;
        break;
      }
      previous = &*child.range;
    }
    for (const auto& child : node->children) stack.push_back(&child);
  }
  return problem;
}

}  // namespace treeforge
