// Command-line front end: runs a (possibly swept) scheduling experiment and
// writes CSV results plus a manifest.

#include <CLI11.hpp>
#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include "dualband/config.h"
#include "dualband/results_io.h"
#include "dualband/sim_engine.h"

int main(int argc, char** argv) {
  using namespace dualband;

  CLI::App app{"Dual-band (microwave + mmW) downlink scheduling simulator"};
  app.require_subcommand(1);

  CLI::App* run = app.add_subcommand("run", "run an experiment");
  std::string config_path;
  std::optional<std::string> out_dir;
  std::optional<int> drops, parallel;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> scheduler, band;
  run->add_option("--config", config_path, "JSON config file");
  run->add_option("--out", out_dir, "output directory");
  run->add_option("--drops", drops, "number of independent drops")
      ->check(CLI::PositiveNumber);
  run->add_option("--seed", seed, "base seed");
  run->add_option("--parallel", parallel, "worker threads")
      ->check(CLI::PositiveNumber);
  run->add_option("--scheduler", scheduler, "context, pfmrr or rr")
      ->check(CLI::IsMember({"context", "pfmrr", "rr"}));
  run->add_option("--band", band, "dual, uw or mmw")
      ->check(CLI::IsMember({"dual", "uw", "mmw"}));

  CLI::App* defaults =
      app.add_subcommand("defaults", "print the default config as JSON");

  CLI11_PARSE(app, argc, argv);

  try {
    if (defaults->parsed()) {
      std::cout << config_to_json(ConfigFile{}).dump(2) << "\n";
      return 0;
    }
    ConfigFile cfg = config_path.empty()
                         ? parse_config_json(nlohmann::json::object())
                         : parse_config(config_path);
    Scenario& base = cfg.experiment.base;
    if (out_dir) cfg.output.dir = *out_dir;
    if (drops) base.drops = *drops;
    if (seed) base.seed = *seed;
    if (parallel) cfg.experiment.parallel = *parallel;
    if (scheduler) cfg.experiment.schedulers = {parse_scheduler(*scheduler)};
    if (band) base.band = parse_band(*band);
    base.validate();

    std::vector<ExperimentRow> rows = run_experiment(cfg.experiment);
    std::cout << emit_results(cfg, rows).string() << "\n";
    for (const ExperimentRow& r : rows) {
      std::cerr << (r.variable.empty() ? "" : r.variable + "=" + r.value + " ")
                << to_string(r.scenario.scheduler) << "/"
                << to_string(r.scenario.band)
                << " outage=" << format_number(r.outage.mean) << "\n";
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
