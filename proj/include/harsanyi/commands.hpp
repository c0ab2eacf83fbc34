#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "harsanyi/andor.hpp"
#include "harsanyi/game.hpp"
#include "json.hpp"

namespace harsanyi {

inline constexpr const char* kReportSchema = "harsanyi-attrib/1";

enum ExitCode : int {
  kExitOk = 0,
  kExitIdentityFailure = 1,
  kExitInputError = 2,
  kExitDiverged = 3,
};

struct RunConfig {
  std::string command;
  std::string input;
  TableFormat format = TableFormat::Json;
  std::optional<unsigned> n_override;
  SplitMode mode = SplitMode::AndOnly;
  OptimizerConfig optimizer;
  std::vector<std::string> coalitions;
  double prune = 0.0;
  std::string output;  // empty: standard output
  bool emit_plot_data = false;
  std::size_t gamma_draws = 20;  // verify

  // synth
  std::string kind = "random";
  std::vector<double> weights;
  std::vector<std::string> plants;     // "mask:coef", the kind's own type
  std::vector<std::string> or_plants;  // "mask:coef", OR terms of mixed games
  std::size_t random_and = 3;
  std::size_t random_or = 2;
};

struct CommandOutput {
  int exit_code = kExitOk;
  std::string text;  // report or table document
};

// Each command loads its own input (except synth) and never writes files;
// the caller decides where text goes. Library errors propagate as Error.
CommandOutput cmd_interactions(const RunConfig& config);
CommandOutput cmd_attribute(const RunConfig& config);
CommandOutput cmd_coalition(const RunConfig& config);
CommandOutput cmd_efficiency(const RunConfig& config);
CommandOutput cmd_verify(const RunConfig& config);
CommandOutput cmd_synth(const RunConfig& config);

// Report builders used by the commands above, for callers holding a table.
nlohmann::ordered_json interactions_report(const ValueTable& table,
                                           const RunConfig& config);
nlohmann::ordered_json attribute_report(const ValueTable& table,
                                        const RunConfig& config);
nlohmann::ordered_json coalition_report(const ValueTable& table,
                                        const RunConfig& config,
                                        bool include_conflict = true);
nlohmann::ordered_json verify_report(const ValueTable& table,
                                     const RunConfig& config, bool& passed);

GameSpec game_spec_from_config(const RunConfig& config, unsigned n);

// Full command-line entry point: parses args (args[0] is the program name),
// applies HARSANYI_N_CAP, runs the command and writes the report to out or
// --output. Diagnostics go to err. Returns the process exit status.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace harsanyi
