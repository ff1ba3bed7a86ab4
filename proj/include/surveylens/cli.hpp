#ifndef SURVEYLENS_CLI_HPP
#define SURVEYLENS_CLI_HPP

#include <iosfwd>

namespace surveylens {

enum ExitCode : int {
  kExitOk = 0,
  kExitFailure = 1,
  kExitUsage = 2,
  kExitBadInput = 3,
  kExitProvider = 4,
  kExitTooFewSamples = 5,
  kExitNoTitles = 6,
};

/// Entry point of the `surveylens` tool. Subcommands: cluster, assign, render.
/// The report goes to `--out` (or `out` when omitted); diagnostics to `err`.
/// Nothing is written to disk unless the whole run succeeds.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace surveylens

#endif  // SURVEYLENS_CLI_HPP
