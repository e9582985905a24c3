#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace pdaed {

/// Exit statuses of the command-line tool. Decision outcomes ("no", "false",
/// "infinite") are reported with status ok.
enum ExitStatus : int {
  kExitOk = 0,
  kExitUsage = 1,
  kExitInvalidInput = 2,
  kExitPrecondition = 3,
  kExitBudget = 4,
  kExitInternal = 5,
};

/// Default source-length budget of the `oracle` commands, unless overridden by
/// the environment variable named here or by --budget.
inline constexpr const char* kOracleBudgetVariable = "PDAED_ORACLE_BUDGET";

/// Runs one command. `args` excludes the program name, e.g.
/// {"ted", "--pda", "p.pda", "--nfa", "n.nfa", "--threshold", "3"}.
/// Reports go to `out`, diagnostics to `err`.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pdaed
