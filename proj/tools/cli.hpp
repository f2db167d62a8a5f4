#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qsim::cli {

inline constexpr int kExitSuccess = 0;
inline constexpr int kExitAlgorithmFailure = 1;
inline constexpr int kExitUsage = 2;

/// Runs one invocation. `args` excludes the program name. The report goes to
/// `out`, diagnostics to `err`.
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

} // namespace qsim::cli
