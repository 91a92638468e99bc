#pragma once

#include <iosfwd>

namespace reppact {

// Exit codes of the reppact command line tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;     // bad arguments, unreadable or malformed input
inline constexpr int kExitMismatch = 2;  // verify or receipt check failed
inline constexpr int kExitInfeasible = 3;
inline constexpr int kExitNodeBudget = 4;

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace reppact
