#pragma once

#include <string>
#include <vector>

namespace pdtv::cli {

/// sysexits-style codes shared by all subcommands.
enum ExitCode : int {
  kOk = 0,
  kBackstop = 2,   ///< solver hit max_iter before the tolerance
  kUsage = 64,     ///< bad flags / bad configuration
  kDataError = 65, ///< broken user data (shape mismatch, malformed image)
  kIoError = 74,   ///< filesystem trouble (missing file, failed write)
};

/// Full argv (excluding the program name). Returns the process exit code.
int run_cli(const std::vector<std::string>& args);

}  // namespace pdtv::cli
