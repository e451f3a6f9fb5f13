#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace dqo::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitNumerical = 3;

// Runs one invocation. args excludes the program name. Output goes to
// --out when given, otherwise to `out`; errors are written to `err` as a
// single line "ERROR <code>: <message>".
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace dqo::cli
