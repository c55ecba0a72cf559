#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace mumd {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitVerification = 3;

// Entry point behind the `mumd` executable. args excludes the program name.
// Failures print a single "error: <kind>: <message>" line to err.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace mumd
