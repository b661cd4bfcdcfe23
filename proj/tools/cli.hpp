#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace fejer::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitNumerical = 3;

// Runs one command line (without the program name). Payload goes to `out`,
// diagnostics to `err`; returns the process exit status.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// Numbers are printed with 12 significant digits.
std::string format_number(double v);

}  // namespace fejer::cli
