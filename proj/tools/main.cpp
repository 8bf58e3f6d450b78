#include "cli/commands.h"
#include "cli/run_config.h"

#include "CLI11.hpp"

#include <fstream>
#include <iostream>
#include <optional>

namespace {

struct Flags {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> replicates;
  std::optional<std::string> out;
  std::optional<std::string> case_name;
  bool force_case = false;
  std::optional<double> threshold;
  std::optional<double> confidence;
};

auto add_flags(CLI::App& sub, Flags& f) -> void {
  sub.add_option("--config", f.config, "JSON run configuration")->required()->check(CLI::ExistingFile);
  sub.add_option("--seed", f.seed, "base seed (overrides config)");
  sub.add_option("--replicates", f.replicates, "number of replicates (overrides config)");
  sub.add_option("--out", f.out, "output file (default: stdout)");
  sub.add_option("--case", f.case_name, "case id, e.g. case6 or k3plus-case2");
  sub.add_flag("--force-case", f.force_case, "use --case even when the tuple classifies differently");
  sub.add_option("--threshold", f.threshold, "band factor theta for <<, ~ and >>");
  sub.add_option("--confidence", f.confidence, "DKW confidence parameter delta");
}

auto apply(const Flags& f) -> mutclock::cli::Run_config {
  auto cfg = mutclock::cli::load_config(f.config);
  if (f.seed) { cfg.seed = *f.seed; }
  if (f.replicates) { cfg.replicates = *f.replicates; }
  if (f.case_name) { cfg.case_name = *f.case_name; }
  if (f.force_case) { cfg.force_case = true; }
  if (f.threshold) { cfg.threshold = *f.threshold; }
  if (f.confidence) { cfg.confidence = *f.confidence; }
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  using namespace mutclock::cli;
  auto app = CLI::App{"Simulation and limit-law verification for multistage mutation clocks on a torus"};
  app.require_subcommand(1);
  app.set_version_flag("--version", tool_version());

  auto flags = Flags{};
  auto commands = std::vector<std::pair<std::string, std::string>>{
      {"simulate", "write sigma_k draws as CSV"},
      {"classify", "report the asymptotic regime of a parameter tuple"},
      {"law", "tabulate the CDF of a case's limit law"},
      {"verify", "simulate and compare with the predicted limit law"},
      {"zdist", "sample Z_{d,k}(c) and check its bounds"},
      {"volume", "hit-test estimates of mutant volumes"},
  };
  for (const auto& [name, help] : commands) { add_flags(*app.add_subcommand(name, help), flags); }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    auto code = app.exit(e);
    return code == 0 ? exit_ok : exit_usage;
  }

  try {
    auto cfg = apply(flags);
    auto workers = workers_from_env();
    auto file = std::ofstream{};
    if (flags.out) {
      file.open(*flags.out, std::ios::binary);
      if (!file) {
        std::cerr << "error: cannot write " << *flags.out << '\n';
        return exit_usage;
      }
    }
    std::ostream& out = flags.out ? static_cast<std::ostream&>(file) : std::cout;
    auto name = app.get_subcommands().front()->get_name();
    if (name == "simulate") { return cmd_simulate(cfg, out, workers); }
    if (name == "classify") { return cmd_classify(cfg, out, workers); }
    if (name == "law") { return cmd_law(cfg, out, workers); }
    if (name == "verify") { return cmd_verify(cfg, out, workers); }
    if (name == "zdist") { return cmd_zdist(cfg, flags.out ? &file : nullptr, std::cout, workers); }
    return cmd_volume(cfg, out, workers);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_usage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_usage;
  }
}
