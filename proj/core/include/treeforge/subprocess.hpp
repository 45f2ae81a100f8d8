#pragma once

#include <chrono>
#include <string>
#include <vector>

namespace treeforge {

struct ProcessResult {
  int exit_status = -1;  // -1 when the process did not exit normally
  bool timed_out = false;
  std::string stdout_text;
  std::string stderr_text;
};

/// Runs argv[0] (resolved through PATH) with stdin closed and both output
/// streams captured. A process still alive at the deadline is killed.
/// Throws std::system_error when the process cannot be started.
ProcessResult run_process(const std::vector<std::string>& argv,
                          std::chrono::milliseconds timeout);

}  // namespace treeforge
