#include "treeforge/log.hpp"

#include <cstdlib>
#include <string>

#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

namespace treeforge {

std::shared_ptr<spdlog::logger> logger() {
  static const std::shared_ptr<spdlog::logger> instance = [] {
    auto l = spdlog::stderr_color_mt("treeforge");
    l->set_level(spdlog::level::warn);
    l->set_pattern("%^[%l]%$ %v");
    return l;
  }();
  return instance;
}

bool configure_logging_from_env() {
  const char* value = std::getenv("TREEFORGE_LOG");
  if (value == nullptr || *value == '\0') return true;
  const std::string level(value);
  if (level == "error") {
    logger()->set_level(spdlog::level::err);
  } else if (level == "warn") {
    logger()->set_level(spdlog::level::warn);
  } else if (level == "info") {
    logger()->set_level(spdlog::level::info);
  } else if (level == "debug") {
    logger()->set_level(spdlog::level::debug);
  } else {
    return false;
  }
  return true;
}

}  // namespace treeforge
