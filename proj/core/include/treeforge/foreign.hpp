#pragma once

#include <chrono>
#include <string>
#include <vector>

#include "treeforge/parser.hpp"

namespace treeforge {

/// Launches `command... -f <file_path>` and reads one wire-schema JSON tree
/// from its standard output.
///
/// Failures become skip events: a nonzero exit carries the captured standard
/// error, an undecodable or schema-violating document is reported as
/// "protocol violation: <detail>", and a process outliving `timeout` as
/// "timeout".
ParseOutcome run_foreign_parser(const std::vector<std::string>& command,
                                const std::string& file_path,
                                std::chrono::milliseconds timeout = std::chrono::seconds(60),
                                std::string_view display_path = {});

}  // namespace treeforge
