// runner.hpp — dispatch a parsed RunConfig to the library and emit artifacts

#pragma once

#include <iosfwd>

#include "dephase/config.hpp"

namespace dephase::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfigError = 2;
inline constexpr int kExitNumericalError = 3;

// Executes the configured command, writes the output table to config.out and
// prints a one-line summary to `summary`. Returns a process exit status:
// 0 success, 2 invalid configuration, 3 numerical failure.
int run(const RunConfig& config, std::ostream& summary, std::ostream& errors);

}  // namespace dephase::cli
