#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace weakmeas {

/// Exit codes of the command-line tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitDomain = 2;

/// Runs the tool on `args` (without the program name). Subcommands:
/// weak-value, figure, distribution, summarize, simulate.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Fock truncation used by commands that build matrices: WEAKMEAS_DIM when set, else 40.
int default_cli_dim();

/// Flat JSON object → equivalent flags, skipping keys already given on the command line.
std::vector<std::string> merge_config(const std::string& json_text, const std::vector<std::string>& args);

}  // namespace weakmeas
