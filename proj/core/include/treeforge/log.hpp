#pragma once

#include <memory>
#include <optional>
#include <string_view>

namespace spdlog {
class logger;
}

namespace treeforge {

/// Shared logger writing to standard error. Standard output is reserved for
/// machine-readable results.
std::shared_ptr<spdlog::logger> logger();

/// Applies TREEFORGE_LOG (error, warn, info, debug); warn when unset.
/// Returns false when the variable holds an unknown level.
bool configure_logging_from_env();

}  // namespace treeforge
