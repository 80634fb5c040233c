#pragma once

#include <string>
#include <vector>

namespace trigmom {

/// Entry point of the command-line tool; returns the process exit code.
/// 0 = success, 2 = input moments not solvable, 1 = any other error.
int run_cli(int argc, const char* const* argv);

/// Convenience overload for in-process driving; args exclude the program
/// name.
int run_cli(const std::vector<std::string>& args);

}  // namespace trigmom
