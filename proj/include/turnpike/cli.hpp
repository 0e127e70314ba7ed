#pragma once

#include <iosfwd>

namespace turnpike {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInputError = 2;
inline constexpr int kExitCapExceeded = 3;

/// Runs the command-line front end. Reports go to `out`, diagnostics to
/// `err`. Returns the process exit code.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace turnpike
