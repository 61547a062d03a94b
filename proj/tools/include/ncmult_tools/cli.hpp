#pragma once

#include <string>
#include <vector>

namespace ncmult::tools {

// Exit codes of the command line tool.
inline constexpr int kExitPass = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitAuditFail = 2;

// Ball cap: NCMULT_BALL_CAP when set and valid, else the library default.
std::size_t ball_cap_from_environment();

// Full command line, argv[0] included. Reports go to --output or stdout,
// diagnostics to stderr.
int run_cli(const std::vector<std::string>& args);

}  // namespace ncmult::tools
