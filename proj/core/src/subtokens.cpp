#include "treeforge/subtokens.hpp"

#include <cstdint>

namespace treeforge {
namespace {

enum class CharClass : std::uint8_t { kSeparator, kUpper, kLower, kDigit };

CharClass classify(unsigned char c) noexcept {
  if (c >= 'A' && c <= 'Z') return CharClass::kUpper;
  if ((c >= 'a' && c <= 'z') || c >= 0x80) return CharClass::kLower;
  if (c >= '0' && c <= '9') return CharClass::kDigit;
  return CharClass::kSeparator;
}

char lower(unsigned char c) noexcept {
  return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : static_cast<char>(c);
}

}  // namespace

std::vector<std::string> split_subtokens(std::string_view identifier) {
  std::vector<std::string> out;
  std::string current;
  auto flush = [&] {
    if (!current.empty()) out.push_back(std::move(current));
    current.clear();
  };

  const std::size_t n = identifier.size();
  for (std::size_t i = 0; i < n; ++i) {
    const auto c = static_cast<unsigned char>(identifier[i]);
    const CharClass cls = classify(c);
    if (cls == CharClass::kSeparator) {
      flush();
      continue;
    }
    if (!current.empty()) {
      const CharClass prev = classify(static_cast<unsigned char>(identifier[i - 1]));
      const bool prev_letter = prev == CharClass::kUpper || prev == CharClass::kLower;
      const bool cur_letter = cls == CharClass::kUpper || cls == CharClass::kLower;
      if (prev_letter != cur_letter) {
        flush();
      } else if (prev == CharClass::kLower && cls == CharClass::kUpper) {
        flush();
      } else if (prev == CharClass::kUpper && cls == CharClass::kUpper && i + 1 < n &&
                 classify(static_cast<unsigned char>(identifier[i + 1])) == CharClass::kLower) {
        // End of an acronym run: "HTMLParser" splits before the "P".
        flush();
      }
    }
    current.push_back(lower(c));
  }
  flush();
  return out;
}

std::string join(const std::vector<std::string>& parts, std::string_view separator) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i != 0) out.append(separator);
    out.append(parts[i]);
  }
  return out;
}

}  // namespace treeforge
