// uavcpn: task completion probability of a UAV-relayed computing power
// network, analytically and by Monte Carlo simulation.

#include <CLI11.hpp>
#include <iostream>

#include "uavcpn/commands.hpp"
#include "uavcpn/sweep.hpp"

namespace {

void add_common(CLI::App* cmd, uavcpn::CommonOptions& o, bool simulation) {
  cmd->add_option("--config", o.config_path,
                  "Scenario file (default: $UAVCPN_CONFIG, else built-in "
                  "defaults)");
  cmd->add_option("--set", o.overrides, "Override a config key (key=value)")
      ->take_all()
      ->allow_extra_args(false);
  cmd->add_option("--output", o.output, "Write results to this file");
  cmd->add_flag("--json", o.json, "Machine-readable output on stdout");
  if (simulation) {
    cmd->add_option("--seed", o.seed, "Master seed")->capture_default_str();
    cmd->add_option("--trials", o.trials, "Monte Carlo trials")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    cmd->add_option("--gus", o.gus, "GUs sampled per trial")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
  }
  cmd->add_option("--jobs", o.jobs, "Worker threads")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Task completion probability for UAV-relayed computing power "
               "networks"};
  app.set_version_flag("--version", uavcpn::tool_version());
  app.require_subcommand(1);

  uavcpn::CommonOptions analyze_opts;
  auto* analyze = app.add_subcommand(
      "analyze", "Spatially averaged success probability (analytical)");
  add_common(analyze, analyze_opts, false);

  uavcpn::CommonOptions simulate_opts;
  auto* simulate =
      app.add_subcommand("simulate", "Monte Carlo estimate of the average");
  add_common(simulate, simulate_opts, true);

  uavcpn::CommonOptions compare_opts;
  std::string altitudes = "100:1000:10";
  auto* compare = app.add_subcommand(
      "compare", "Theory versus simulation over an altitude grid");
  add_common(compare, compare_opts, true);
  compare
      ->add_option("--altitudes", altitudes,
                   "start:stop:points or a comma-separated list (m)")
      ->capture_default_str();

  uavcpn::CommonOptions sweep_opts;
  std::vector<std::string> axes;
  std::string engine = "theory";
  std::optional<std::string> json_output;
  auto* sweep = app.add_subcommand("sweep", "Parameter sweep to CSV");
  add_common(sweep, sweep_opts, true);
  sweep
      ->add_option("--axis", axes,
                   "name=start:stop:points[:log]; name is one of altitude, "
                   "cn_density, cn_dist_radius, t_max, compute_latency")
      ->required()
      ->take_all()
      ->allow_extra_args(false);
  sweep->add_option("--engine", engine, "theory, mc or both")
      ->capture_default_str();
  sweep->add_option("--json-output", json_output, "Also write a JSON mirror");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : uavcpn::kExitInvalid;
  }

  if (*analyze) return uavcpn::cmd_analyze(analyze_opts, std::cout, std::cerr);
  if (*simulate) {
    return uavcpn::cmd_simulate(simulate_opts, std::cout, std::cerr);
  }
  if (*compare) {
    return uavcpn::cmd_compare(compare_opts, altitudes, std::cout, std::cerr);
  }
  return uavcpn::cmd_sweep(sweep_opts, axes, engine, json_output, std::cout,
                           std::cerr);
}
