#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace fricke::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalid = 2;
inline constexpr int kExitNotFound = 3;

/// Runs one command line (program name excluded). Reports go to `out`, diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fricke::cli
