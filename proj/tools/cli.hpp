#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace zdim::cli {

inline constexpr int kExitPass = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitBudget = 2;

// Runs the zdim command line; args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace zdim::cli
