#pragma once

// Command-line surface. run() is the whole program (the binary's main
// just forwards), which keeps every command testable in-process.
//
// Exit codes: 0 clean/localized, 2 incomplete localization, 3 model
// violation, 1 usage or file error.

#include <iosfwd>
#include <string>
#include <vector>

namespace coploc::cli {

inline constexpr int exit_ok = 0;
inline constexpr int exit_usage = 1;
inline constexpr int exit_incomplete = 2;
inline constexpr int exit_model_violation = 3;

int run(std::vector<std::string> args, std::ostream& out, std::ostream& err);
int run(int argc, const char* const* argv);

}  // namespace coploc::cli
