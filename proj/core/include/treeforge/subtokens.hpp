#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace treeforge {

/// Splits an identifier into lowercase subtokens.
///
/// Boundaries are placed at every non-alphanumeric character (dropped), at
/// lower-to-upper transitions, before the last capital of an uppercase run that
/// is followed by a lowercase letter (`HTMLParser` -> `html`, `parser`), and
/// between letters and digits. Bytes >= 0x80 are treated as caseless letters so
/// UTF-8 identifiers survive intact.
std::vector<std::string> split_subtokens(std::string_view identifier);

std::string join(const std::vector<std::string>& parts, std::string_view separator);

}  // namespace treeforge
