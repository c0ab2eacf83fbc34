#include "harsanyi/commands.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include "CLI11.hpp"
#include "harsanyi/attribution.hpp"
#include "harsanyi/error.hpp"
#include "harsanyi/interactions.hpp"
#include "harsanyi/json_writer.hpp"
#include "harsanyi/oracle.hpp"
#include "harsanyi/verify.hpp"

namespace harsanyi {

namespace {

using Json = nlohmann::ordered_json;

// Terms below this magnitude are left out of printed breakdowns.
constexpr double kTermPrintThreshold = 1e-12;

struct ResolvedSplit {
  AndOrSplit split;
  double loss = 0.0;
  std::optional<OptimizationResult> optimization;
};

ResolvedSplit resolve_split(const ValueTable& table, const RunConfig& config) {
  if (config.mode == SplitMode::Learned) {
    OptimizationResult result = optimize_gamma(table, config.optimizer);
    AndOrSplit split = result.split;
    const double loss = result.loss;
    return {std::move(split), loss, std::move(result)};
  }
  AndOrSplit split = split_fixed(table, config.mode);
  const double loss = sparsity_loss(split);
  return {std::move(split), loss, std::nullopt};
}

ValueTable load_input(const RunConfig& config) {
  if (config.input.empty()) {
    throw Error(ErrorKind::InvalidConfig, "--input is required");
  }
  return load_value_table_file(config.input, config.format,
                               config.n_override);
}

Json config_json(const RunConfig& config, const ValueTable* table) {
  Json j;
  j["command"] = config.command;
  j["input"] = config.input;
  j["format"] = config.format == TableFormat::Csv ? "csv" : "json";
  j["n"] = config.n_override ? Json(*config.n_override) : Json(nullptr);
  j["mode"] = std::string(to_string(config.mode));
  j["seed"] = config.optimizer.seed;
  j["optimizer"] = std::string(to_string(config.optimizer.method));
  j["max_iters"] = config.optimizer.max_iters;
  if (config.optimizer.step0) {
    j["step0"] = *config.optimizer.step0;
  } else if (table != nullptr) {
    j["step0"] = default_step0(*table);
  } else {
    j["step0"] = nullptr;
  }
  j["decay"] = config.optimizer.decay;
  j["tol"] = config.optimizer.tol;
  j["coalitions"] = config.coalitions;
  j["prune"] = config.prune;
  j["emit_plot_data"] = config.emit_plot_data;
  j["n_cap"] = variable_cap();
  return j;
}

Json meta_json(const ValueTable& table, const ResolvedSplit& resolved) {
  Json j;
  j["n"] = table.n();
  Json labels = Json::array();
  for (unsigned i = 0; i < table.n(); ++i) labels.push_back(table.label(i));
  j["labels"] = std::move(labels);
  j["mode"] = std::string(to_string(resolved.split.mode()));
  j["loss"] = resolved.loss;
  j["baseline"] = table.baseline();
  j["grand"] = table.grand();
  if (resolved.optimization) {
    const auto& opt = *resolved.optimization;
    j["optimizer"] = {{"iterations", opt.iterations},
                      {"converged", opt.converged},
                      {"initial_loss", opt.initial_loss}};
  }
  return j;
}

Json report_header(const RunConfig& config, const ValueTable& table) {
  Json j;
  j["schema"] = kReportSchema;
  j["command"] = config.command;
  j["config"] = config_json(config, &table);
  return j;
}

Json bar(std::string label, double value) {
  return Json{{"label", std::move(label)}, {"value", value}};
}

std::string coalition_label(const ValueTable& table, Mask mask) {
  if (table.labels().empty()) return format_coalition(mask, table.n());
  std::string out = "{";
  bool first = true;
  for (unsigned i = 0; i < table.n(); ++i) {
    if (!contains(mask, i)) continue;
    if (!first) out += ',';
    first = false;
    out += table.label(i);
  }
  return out + "}";
}

std::vector<CoalitionMask> parse_coalitions(const RunConfig& config,
                                            unsigned n) {
  if (config.coalitions.empty()) {
    throw Error(ErrorKind::InvalidConfig,
                "at least one --coalition is required");
  }
  std::vector<CoalitionMask> out;
  for (const auto& text : config.coalitions) {
    out.push_back(parse_coalition(text, n));
  }
  return out;
}

PlantedTerm parse_plant(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) {
    throw Error(ErrorKind::ParseError,
                "plant \"" + text + "\" must look like mask:coefficient");
  }
  PlantedTerm term;
  const std::string mask_text = text.substr(0, colon);
  const auto [ptr, ec] = std::from_chars(
      mask_text.data(), mask_text.data() + mask_text.size(), term.mask);
  if (ec != std::errc{} || ptr != mask_text.data() + mask_text.size() ||
      mask_text.empty()) {
    throw Error(ErrorKind::ParseError,
                "plant mask \"" + mask_text + "\" is not an integer");
  }
  try {
    std::size_t used = 0;
    const std::string coef_text = text.substr(colon + 1);
    term.coefficient = std::stod(coef_text, &used);
    if (used != coef_text.size()) throw std::invalid_argument("trailing");
  } catch (const std::exception&) {
    throw Error(ErrorKind::ParseError,
                "plant coefficient in \"" + text + "\" is not a number");
  }
  return term;
}

}  // namespace

GameSpec game_spec_from_config(const RunConfig& config, unsigned n) {
  const auto kind = parse_game_kind(config.kind);
  if (!kind) {
    throw Error(ErrorKind::InvalidConfig, "unknown game kind " + config.kind);
  }
  std::vector<PlantedTerm> plants;
  for (const auto& p : config.plants) plants.push_back(parse_plant(p));
  std::vector<PlantedTerm> or_plants;
  for (const auto& p : config.or_plants) or_plants.push_back(parse_plant(p));

  const bool planted = *kind == GameKind::PlantedAnd ||
                       *kind == GameKind::PlantedOr ||
                       *kind == GameKind::PlantedMixed;
  if (!planted && (!plants.empty() || !or_plants.empty())) {
    throw Error(ErrorKind::InvalidConfig,
                "--plant only applies to planted game kinds");
  }
  if (*kind != GameKind::PlantedMixed && !or_plants.empty()) {
    throw Error(ErrorKind::InvalidConfig,
                "--or-plant only applies to planted-mixed games");
  }

  GameSpec spec;
  if (planted && plants.empty() && or_plants.empty()) {
    const std::size_t num_and =
        *kind == GameKind::PlantedOr ? 0 : config.random_and;
    const std::size_t num_or =
        *kind == GameKind::PlantedAnd ? 0 : config.random_or;
    if (num_and + num_or == 0) {
      throw Error(ErrorKind::InvalidConfig, "no interactions to plant");
    }
    spec = random_planted_spec(n, num_and, num_or, config.optimizer.seed);
    spec.kind = *kind;
    return spec;
  }
  spec.kind = *kind;
  spec.n = n;
  spec.seed = config.optimizer.seed;
  spec.weights = config.weights;
  if (*kind == GameKind::PlantedOr) {
    spec.or_terms = std::move(plants);
  } else {
    spec.and_terms = std::move(plants);
    spec.or_terms = std::move(or_plants);
  }
  return spec;
}

Json interactions_report(const ValueTable& table, const RunConfig& config) {
  const ResolvedSplit resolved = resolve_split(table, config);
  const InteractionSpectrum spectrum = compute_spectrum(resolved.split);

  Json report = report_header(config, table);
  report["meta"] = meta_json(table, resolved);

  std::vector<Mask> kept;
  for (Mask s = 1; s <= full_mask(table.n()); ++s) {
    const double magnitude =
        std::max(std::abs(spectrum.i_and[s]), std::abs(spectrum.i_or[s]));
    if (magnitude > config.prune) kept.push_back(s);
  }
  const auto strength = [&](Mask s) {
    return std::abs(spectrum.i_and[s]) + std::abs(spectrum.i_or[s]);
  };
  std::stable_sort(kept.begin(), kept.end(), [&](Mask a, Mask b) {
    return strength(a) > strength(b);
  });

  Json entries = Json::array();
  Json bars = Json::array();
  for (Mask s : kept) {
    entries.push_back({{"mask", s},
                       {"members", format_coalition(s, table.n())},
                       {"i_and", spectrum.i_and[s]},
                       {"i_or", spectrum.i_or[s]}});
    bars.push_back(bar(coalition_label(table, s), spectrum.total(s)));
  }
  report["interactions"] = std::move(entries);

  const LatticeVector rebuilt = reconstruct_all(spectrum);
  double max_error = 0.0;
  for (Mask s = 0; s <= full_mask(table.n()); ++s) {
    max_error = std::max(max_error, std::abs(rebuilt[s] - table(s)));
  }
  report["reconstruction_max_error"] = max_error;
  if (config.emit_plot_data) report["bars"] = std::move(bars);
  return report;
}

Json attribute_report(const ValueTable& table, const RunConfig& config) {
  const ResolvedSplit resolved = resolve_split(table, config);
  const InteractionSpectrum spectrum = compute_spectrum(resolved.split);
  const std::vector<double> phi = shapley_from_interactions(spectrum);
  const std::vector<double> bz = banzhaf_from_interactions(spectrum);

  Json report = report_header(config, table);
  report["meta"] = meta_json(table, resolved);
  report["shapley"] = phi;
  report["banzhaf"] = bz;

  double phi_sum = 0.0;
  for (double x : phi) phi_sum += x;
  report["shapley_efficiency_error"] =
      std::abs(phi_sum - (table.grand() - table.baseline()));

  if (table.n() <= oracle::kOracleCap) {
    double shapley_err = 0.0;
    double banzhaf_err = 0.0;
    for (unsigned i = 0; i < table.n(); ++i) {
      shapley_err = std::max(
          shapley_err, std::abs(phi[i] - oracle::shapley_direct(table, i)));
      banzhaf_err = std::max(
          banzhaf_err, std::abs(bz[i] - oracle::banzhaf_direct(table, i)));
    }
    const double tolerance = 1e-9 * std::max(1.0, table.max_abs());
    report["identity_checks"] = {
        {"shapley_max_err", shapley_err},
        {"banzhaf_max_err", banzhaf_err},
        {"tolerance", tolerance},
        {"passed", shapley_err <= tolerance && banzhaf_err <= tolerance}};
  }

  if (config.emit_plot_data) {
    Json bars = Json::array();
    for (unsigned i = 0; i < table.n(); ++i) {
      bars.push_back(bar(table.label(i), phi[i]));
    }
    report["bars"] = std::move(bars);
  }
  return report;
}

Json coalition_report(const ValueTable& table, const RunConfig& config,
                      bool include_conflict) {
  const std::vector<CoalitionMask> coalitions =
      parse_coalitions(config, table.n());
  const ResolvedSplit resolved = resolve_split(table, config);
  const InteractionSpectrum spectrum = compute_spectrum(resolved.split);
  const std::vector<double> phi = shapley_from_interactions(spectrum);

  Json report = report_header(config, table);
  report["meta"] = meta_json(table, resolved);
  report["shapley"] = phi;

  Json conflict_entries = Json::array();
  Json efficiency_entries = Json::array();
  Json bars = Json::array();
  const double target = table.grand() - table.baseline();
  double max_abs_error = 0.0;

  for (const CoalitionMask& s : coalitions) {
    const ConflictReport conflict = conflict_decomposition(spectrum, s);
    const EfficiencyReport eff = efficiency_report(spectrum, s);
    max_abs_error = std::max(max_abs_error, std::abs(eff.total - eff.target));

    if (include_conflict) {
      Json terms = Json::array();
      for (const auto& term : conflict.terms) {
        if (std::abs(term.contribution) <= kTermPrintThreshold) continue;
        terms.push_back({{"mask", term.mask},
                         {"members", format_coalition(term.mask, table.n())},
                         {"weight", term.weight},
                         {"contribution", term.contribution}});
      }
      Json members = Json::array();
      for (unsigned i : s.members()) {
        const VariableShare share = per_variable_decomposition(spectrum, s, i);
        members.push_back({{"index", i},
                           {"label", table.label(i)},
                           {"shapley", phi[i]},
                           {"share", share.share},
                           {"residual", share.residual}});
      }
      conflict_entries.push_back(
          {{"mask", s.bits()},
           {"members", format_coalition(s.bits(), table.n())},
           {"varphi", conflict.varphi},
           {"shapley_sum", conflict.shapley_sum},
           {"residual", conflict.partial_overlap_residual},
           {"terms", std::move(terms)},
           {"per_variable", std::move(members)}});
    }
    efficiency_entries.push_back(
        {{"mask", s.bits()},
         {"members", format_coalition(s.bits(), table.n())},
         {"varphi", eff.varphi},
         {"outside_phi", eff.outside_phi},
         {"residual", eff.residual},
         {"total", eff.total},
         {"target", eff.target}});
    bars.push_back(bar(coalition_label(table, s.bits()), conflict.varphi));
  }

  if (include_conflict) report["coalition"] = std::move(conflict_entries);
  Json efficiency;
  efficiency["target"] = target;
  efficiency["max_abs_error"] = max_abs_error;
  efficiency["entries"] = std::move(efficiency_entries);
  report["efficiency"] = std::move(efficiency);

  if (config.emit_plot_data) {
    for (unsigned i = 0; i < table.n(); ++i) {
      bars.push_back(bar(table.label(i), phi[i]));
    }
    report["bars"] = std::move(bars);
  }
  return report;
}

Json verify_report(const ValueTable& table, const RunConfig& config,
                   bool& passed) {
  VerifyOptions options;
  options.optimizer = config.optimizer;
  options.gamma_draws = config.gamma_draws;
  const std::vector<IdentityResult> results =
      verify_identities(table, options);

  Json report = report_header(config, table);
  report["meta"] = {{"n", table.n()},
                    {"scale", std::max(1.0, table.max_abs())},
                    {"relative_tolerance", options.relative_tolerance},
                    {"gamma_draws", options.gamma_draws}};
  Json identities = Json::array();
  passed = true;
  for (const auto& r : results) {
    passed = passed && r.passed;
    identities.push_back({{"name", r.name},
                          {"max_error", r.max_error},
                          {"tolerance", r.tolerance},
                          {"checks", r.checks},
                          {"passed", r.passed}});
  }
  report["identities"] = std::move(identities);
  report["passed"] = passed;
  return report;
}

CommandOutput cmd_interactions(const RunConfig& config) {
  const ValueTable table = load_input(config);
  return {kExitOk, dump_json(interactions_report(table, config)) + "\n"};
}

CommandOutput cmd_attribute(const RunConfig& config) {
  const ValueTable table = load_input(config);
  return {kExitOk, dump_json(attribute_report(table, config)) + "\n"};
}

CommandOutput cmd_coalition(const RunConfig& config) {
  const ValueTable table = load_input(config);
  return {kExitOk, dump_json(coalition_report(table, config)) + "\n"};
}

CommandOutput cmd_efficiency(const RunConfig& config) {
  const ValueTable table = load_input(config);
  return {kExitOk, dump_json(coalition_report(table, config, false)) + "\n"};
}

CommandOutput cmd_verify(const RunConfig& config) {
  const ValueTable table = load_input(config);
  if (table.n() > oracle::kOracleCap) {
    throw Error(ErrorKind::CapExceeded,
                "verify supports n <= " + std::to_string(oracle::kOracleCap) +
                    ", got n=" + std::to_string(table.n()));
  }
  bool passed = false;
  const Json report = verify_report(table, config, passed);
  return {passed ? kExitOk : kExitIdentityFailure, dump_json(report) + "\n"};
}

CommandOutput cmd_synth(const RunConfig& config) {
  if (!config.n_override) {
    throw Error(ErrorKind::InvalidConfig, "synth requires --n");
  }
  const GameSpec spec = game_spec_from_config(config, *config.n_override);
  return {kExitOk, serialize_value_table(synth_game(spec))};
}

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  RunConfig config;
  std::string format_text = "json";
  std::string mode_text;
  std::optional<unsigned> n_flag;
  std::optional<double> step0;
  std::string method_text = "primal-dual";

  CLI::App app{"Harsanyi AND/OR interactions and coalition attributions"};
  app.name(args.empty() ? "harsanyi" : args.front());
  app.require_subcommand(1);

  const auto add_table_options = [&](CLI::App* sub) {
    sub->add_option("--input", config.input, "Value table file")->required();
    sub->add_option("--format", format_text, "json or csv")
        ->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--n", n_flag, "Variable count (CSV inference override)");
  };
  const auto add_split_options = [&](CLI::App* sub) {
    sub->add_option("--mode", mode_text,
                    "and-only, or-only, balanced or learned")
        ->check(CLI::IsMember({"and-only", "or-only", "balanced", "learned"}));
    sub->add_option("--seed", config.optimizer.seed, "Random seed");
    sub->add_option("--optimizer", method_text,
                    "primal-dual or subgradient (learned mode)")
        ->check(CLI::IsMember({"primal-dual", "subgradient"}));
    sub->add_option("--max-iters", config.optimizer.max_iters,
                    "Optimizer iteration limit");
    sub->add_option("--step0", step0, "Primal step scale or initial step");
    sub->add_option("--decay", config.optimizer.decay,
                    "Step decay exponent");
    sub->add_option("--tol", config.optimizer.tol,
                    "Relative improvement threshold for stopping");
    sub->add_option("--output", config.output, "Report path");
    sub->add_flag("--emit-plot-data", config.emit_plot_data,
                  "Add a bars array for charts");
  };

  auto* interactions = app.add_subcommand("interactions",
                                          "AND/OR interaction spectrum");
  add_table_options(interactions);
  add_split_options(interactions);
  interactions->add_option("--prune", config.prune,
                           "Drop interactions with magnitude <= this");

  auto* attribute =
      app.add_subcommand("attribute", "Shapley and Banzhaf attributions");
  add_table_options(attribute);
  add_split_options(attribute);

  auto* coalition = app.add_subcommand(
      "coalition", "Coalition attribution with conflict decomposition");
  add_table_options(coalition);
  add_split_options(coalition);
  coalition->add_option("--coalition", config.coalitions,
                        "Comma-separated variable indices (repeatable)")
      ->required()
      ->expected(1)
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);

  auto* efficiency =
      app.add_subcommand("efficiency", "Coalition efficiency decomposition");
  add_table_options(efficiency);
  add_split_options(efficiency);
  efficiency->add_option("--coalition", config.coalitions,
                         "Comma-separated variable indices (repeatable)")
      ->required()
      ->expected(1)
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);

  auto* verify =
      app.add_subcommand("verify", "Check every identity on a table");
  add_table_options(verify);
  add_split_options(verify);
  verify->add_option("--gamma-draws", config.gamma_draws,
                     "Random gamma vectors to check");

  auto* synth = app.add_subcommand("synth", "Write a synthetic value table");
  synth->add_option("--kind", config.kind,
                    "linear, planted-and, planted-or, planted-mixed, random")
      ->check(CLI::IsMember(
          {"linear", "planted-and", "planted-or", "planted-mixed", "random"}));
  synth->add_option("--n", n_flag, "Variable count")->required();
  synth->add_option("--seed", config.optimizer.seed, "Random seed");
  synth->add_option("--weights", config.weights, "Linear weights")
      ->delimiter(',');
  synth->add_option("--plant", config.plants,
                    "mask:coefficient, repeatable")
      ->expected(1)
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
  synth->add_option("--or-plant", config.or_plants,
                    "mask:coefficient OR term of a planted-mixed game")
      ->expected(1)
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
  synth->add_option("--random-and", config.random_and,
                    "AND terms drawn when no --plant is given");
  synth->add_option("--random-or", config.random_or,
                    "OR terms drawn when no --plant is given");
  synth->add_option("--output", config.output, "Table path");

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInputError;
  }

  try {
    if (const char* cap = std::getenv("HARSANYI_N_CAP")) {
      unsigned value = 0;
      const std::string_view text(cap);
      const auto [ptr, ec] =
          std::from_chars(text.data(), text.data() + text.size(), value);
      if (ec != std::errc{} || ptr != text.data() + text.size()) {
        throw Error(ErrorKind::InvalidConfig,
                    "HARSANYI_N_CAP must be an integer, got \"" +
                        std::string(text) + "\"");
      }
      set_variable_cap(value);
    }

    config.command = app.get_subcommands().front()->get_name();
    config.format = *parse_table_format(format_text);
    config.n_override = n_flag;
    config.optimizer.step0 = step0;
    config.optimizer.method = *parse_optimizer_method(method_text);
    if (!mode_text.empty()) config.mode = *parse_split_mode(mode_text);
    validate(config.optimizer);

    CommandOutput result;
    if (config.command == "interactions") {
      result = cmd_interactions(config);
    } else if (config.command == "attribute") {
      result = cmd_attribute(config);
    } else if (config.command == "coalition") {
      result = cmd_coalition(config);
    } else if (config.command == "efficiency") {
      result = cmd_efficiency(config);
    } else if (config.command == "verify") {
      result = cmd_verify(config);
    } else {
      result = cmd_synth(config);
    }

    if (config.output.empty()) {
      out << result.text;
      out.flush();
    } else {
      std::ofstream file(config.output, std::ios::binary | std::ios::trunc);
      if (!file || !(file << result.text)) {
        throw Error(ErrorKind::Io, "cannot write " + config.output);
      }
    }
    return result.exit_code;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return e.kind() == ErrorKind::Diverged ? kExitDiverged : kExitInputError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  }
}

}  // namespace harsanyi
