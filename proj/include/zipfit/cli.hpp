#pragma once

#include <iosfwd>

namespace zipfit {

inline constexpr int kExitAccepted = 0;
inline constexpr int kExitRejected = 1;
inline constexpr int kExitUsage = 2;

// Entry point for `zipfit simulate|fit|tables`. Writes reports to `out` and
// diagnostics to `err`; returns the process exit code.
int run_cli(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err);

}  // namespace zipfit
