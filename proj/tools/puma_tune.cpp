// Command-line driver: simulate, tune and compare.

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "pumatune/errors.hpp"
#include "pumatune/tuner/commands.hpp"
#include "pumatune/tuner/config.hpp"

namespace {

struct Options {
  std::string config;
  std::optional<std::string> out;
  std::optional<std::uint64_t> seed;
  bool plot_data = false;
};

void add_common(CLI::App* cmd, Options& opts) {
  cmd->add_option("--config", opts.config, "Run configuration (JSON)")->required();
  cmd->add_option("--out", opts.out, "Output directory (overrides the configuration)");
  cmd->add_flag("--plot-data", opts.plot_data, "Also write joint<j>_tracking.csv per joint");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"PD computed-torque simulation and multi-objective gain tuning for a six-joint arm"};
  app.require_subcommand(1);

  Options opts;
  auto* simulate = app.add_subcommand("simulate", "Track the trajectory with the configured gains");
  add_common(simulate, opts);
  auto* tune = app.add_subcommand("tune", "Tune the twelve PD gains by minimising the six joint IAEs");
  add_common(tune, opts);
  tune->add_option("--seed", opts.seed, "RNG seed (overrides the configuration)");
  auto* compare = app.add_subcommand("compare", "Tune with both operator families under one seed");
  add_common(compare, opts);
  compare->add_option("--seed", opts.seed, "RNG seed (overrides the configuration)");

  CLI11_PARSE(app, argc, argv);

  pumatune::tuner::RunConfig config;
  try {
    config = pumatune::tuner::load_run_config(opts.config);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  if (opts.out) config.output_directory = *opts.out;
  if (opts.seed) config.optimizer.seed = *opts.seed;
  if (opts.plot_data) config.plot_data = true;

  if (simulate->parsed()) return pumatune::tuner::cmd_simulate(config, std::cout, std::cerr);
  if (tune->parsed()) return pumatune::tuner::cmd_tune(config, std::cout, std::cerr);
  return pumatune::tuner::cmd_compare(config, std::cout, std::cerr);
}
