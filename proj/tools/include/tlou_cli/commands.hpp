#pragma once

#include <filesystem>
#include <optional>
#include <ostream>

#include "tlou/serialization.hpp"
#include "tlou_cli/run_config.hpp"
#include "tlou_cli/synthetic_meter.hpp"

namespace tlou::cli {

enum ExitCode : int { kExitOk = 0, kExitFailure = 1, kExitUsage = 2 };

/// Meter file -> distributions.json. Prints per-hour sample counts.
int cmd_ingest(const RunConfig& cfg, std::ostream& log);

/// distributions.json -> menu_<hour>.json, options_per_hour.csv,
/// option_capacities.csv and utopia_report.csv in out_dir.
int cmd_solve(const RunConfig& cfg, std::ostream& log);

struct CurvesRequest {
  /// Option JSON, or a menu JSON together with `capacity`.
  std::filesystem::path option_file;
  std::optional<double> capacity;
};

/// Option -> price_curves.csv, relative_cost.csv and, when the option's hour
/// has a distribution, expected_cost.csv.
int cmd_curves(const RunConfig& cfg, const CurvesRequest& request, std::ostream& log);

/// distributions.json -> delta_sweep.csv and delta_max.csv.
int cmd_sweep_delta(const RunConfig& cfg, std::ostream& log);

/// Random-instance oracle check of the candidate set. Exit 1 on mismatch.
int cmd_verify(const RunConfig& cfg, bool corrupt_continuity, std::ostream& log);

/// Writes a synthetic meter file to `out`.
int cmd_synth_data(const std::filesystem::path& out, const SyntheticMeterConfig& meter,
                   std::ostream& log);

/// Hourly distributions from a meter stream, as cmd_ingest builds them.
[[nodiscard]] HourlyDistributions build_distributions(std::istream& meter, const RunConfig& cfg,
                                                      IngestDiagnostics* diagnostics = nullptr);

}  // namespace tlou::cli
