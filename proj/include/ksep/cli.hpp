#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace ksep::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitViolation = 2;

/// Runs one command. `args` excludes the program name. Results go to `out`
/// (one JSON document, or CSV for `scan`); diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ksep::cli
