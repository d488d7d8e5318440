#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace qlv {

/// Exit codes of the `qlv` tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailed = 1;
inline constexpr int kExitBadInput = 2;

/// Runs the command line `args` (args[0] is the program name):
///
///     check <file> [--tol E] [--trace]
///     eval -n N "<term>" [--tol E] [--dense] [--limit K]
///     entail -n N "<p>" "<q>" [--tol E]
///     rules
///
/// `check` exits 0 when every assertion holds and 1 otherwise; `entail` exits
/// 0 when the entailment holds and 1 otherwise. Bad input exits 2.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qlv
