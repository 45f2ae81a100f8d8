#include "treeforge/foreign.hpp"

#include <system_error>

#include "treeforge/subprocess.hpp"
#include "treeforge/wire.hpp"

namespace treeforge {
namespace {

std::string trimmed(std::string text) {
  while (!text.empty() && (text.back() == '\n' || text.back() == '\r' || text.back() == ' ')) {
    text.pop_back();
  }
  return text;
}

}  // namespace

ParseOutcome run_foreign_parser(const std::vector<std::string>& command,
                                const std::string& file_path, std::chrono::milliseconds timeout,
                                std::string_view display_path) {
  const std::string shown(display_path.empty() ? std::string_view(file_path) : display_path);
  std::vector<std::string> argv = command;
  argv.emplace_back("-f");
  argv.push_back(file_path);

  ProcessResult proc;
  try {
    proc = run_process(argv, timeout);
  } catch (const std::system_error& e) {
    return SkipEvent{shown, e.what(), std::nullopt};
  }

  if (proc.timed_out) return SkipEvent{shown, "timeout", std::nullopt};
  if (proc.exit_status != 0) {
    std::string message = "exit status " + std::to_string(proc.exit_status);
    if (const std::string err = trimmed(proc.stderr_text); !err.empty()) message += ": " + err;
    return SkipEvent{shown, std::move(message), std::nullopt};
  }

  try {
    AstNode tree = parse_wire_document(decode_utf8_lossy(proc.stdout_text));
    if (auto problem = check_ranges(tree)) throw WireError(*problem);
    return tree;
  } catch (const WireError& e) {
    return SkipEvent{shown, std::string("protocol violation: ") + e.what(), std::nullopt};
  }
}

}  // namespace treeforge
