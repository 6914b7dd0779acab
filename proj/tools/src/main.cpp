#include <iostream>
#include <optional>

#include "CLI11.hpp"
#include "tlou_cli/commands.hpp"

using namespace tlou::cli;

int main(int argc, char** argv) {
  CLI::App app{"Time-and-level-of-use tariff menus from household meter data"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path;
  std::string input;
  std::string out_dir;
  std::string distributions;
  std::optional<int> hour;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> scenarios;
  std::optional<double> delta;
  bool lazy = false;

  app.add_option("--config", config_path, "JSON run configuration")
      ->envname("TLOU_CONFIG")
      ->check(CLI::ExistingFile);
  app.add_option("--input", input, "meter data file (ingest)")->envname("TLOU_INPUT");
  app.add_option("--out-dir", out_dir, "output directory")->envname("TLOU_OUT_DIR");
  app.add_option("--distributions", distributions, "distributions.json to read or write")
      ->envname("TLOU_DISTRIBUTIONS");
  app.add_option("--hour", hour, "restrict to one hour of day")
      ->envname("TLOU_HOUR")
      ->check(CLI::Range(0, 23));
  app.add_option("--seed", seed, "random seed (verify, synth-data)")->envname("TLOU_SEED");
  app.add_option("--scenarios", scenarios, "scenarios per hour (ingest)")
      ->envname("TLOU_SCENARIOS")
      ->check(CLI::PositiveNumber);
  app.add_option("--delta", delta, "required cost advantage of the targeted capacity")
      ->envname("TLOU_DELTA")
      ->check(CLI::NonNegativeNumber);
  app.add_flag("--lazy", lazy, "add optimality rows lazily")->envname("TLOU_LAZY");

  auto* ingest = app.add_subcommand("ingest", "meter file -> hourly scenario distributions");
  auto* solve = app.add_subcommand("solve", "solve the pricing menu for each hour");

  auto* curves = app.add_subcommand("curves", "tabulate price and cost curves of one option");
  CurvesRequest curves_request;
  std::optional<double> curves_capacity;
  curves->add_option("option", curves_request.option_file, "option or menu JSON")
      ->required()
      ->check(CLI::ExistingFile);
  curves->add_option("--capacity", curves_capacity, "pick this capacity from a menu file");

  auto* sweep = app.add_subcommand("sweep-delta", "count nonzero options along a delta grid");

  auto* verify = app.add_subcommand("verify", "check the candidate set against a dense grid");
  std::optional<std::size_t> instances;
  bool corrupt = false;
  verify->add_option("--instances", instances, "number of random instances");
  verify->add_flag("--corrupt-continuity", corrupt)->group("");  // test hook

  auto* synth = app.add_subcommand("synth-data", "write a synthetic meter file");
  std::string synth_out = "data/household_power_consumption.txt";
  int days = 180;
  synth->add_option("--out", synth_out, "output file");
  synth->add_option("--days", days, "days of readings")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    RunConfig cfg = config_path.empty() ? default_run_config() : load_run_config(config_path);
    if (!input.empty()) cfg.input = input;
    if (!out_dir.empty()) cfg.out_dir = out_dir;
    if (!distributions.empty()) cfg.distributions = distributions;
    if (hour) cfg.hours = {*hour};
    if (seed) cfg.verify.seed = *seed;
    if (scenarios) cfg.scenarios = *scenarios;
    if (delta) cfg.solver.delta = *delta;
    if (lazy) cfg.solver.lazy_mode = true;
    if (instances) cfg.verify.instances = *instances;
    cfg.validate();

    if (ingest->parsed()) return cmd_ingest(cfg, std::cout);
    if (solve->parsed()) return cmd_solve(cfg, std::cout);
    if (curves->parsed()) {
      curves_request.capacity = curves_capacity;
      return cmd_curves(cfg, curves_request, std::cout);
    }
    if (sweep->parsed()) return cmd_sweep_delta(cfg, std::cout);
    if (verify->parsed()) return cmd_verify(cfg, corrupt, std::cout);
    if (synth->parsed()) {
      SyntheticMeterConfig meter;
      meter.days = days;
      if (seed) meter.seed = *seed;
      return cmd_synth_data(synth_out, meter, std::cout);
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitUsage;
}
