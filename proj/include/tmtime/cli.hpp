#pragma once

#include <iosfwd>

namespace tmtime {

// Entry point of the `tmtime` command. Exit codes: 0 success / RUNS / no
// violation found, 1 VIOLATES / violation found, 2 usage or parse error,
// 3 invalid machine, 4 resource budget exceeded.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace tmtime
