#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "tlou/consumption_data.hpp"
#include "tlou/price_setter.hpp"

namespace tlou::cli {

/// Bad command-line arguments, configuration or file access (exit code 2).
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SweepSettings {
  double first = 0.0;
  double last = 2.0;
  std::size_t count = 20;
  friend bool operator==(const SweepSettings&, const SweepSettings&) = default;
};

struct CurveSettings {
  double capacity_max = 6.0;
  double consumption_max = 6.0;
  double step = 0.01;
  /// Capacities for which the relative-cost curve is tabulated.
  std::vector<double> relative_capacities{1.5, 3.0, 3.5};
  friend bool operator==(const CurveSettings&, const CurveSettings&) = default;
};

struct VerifySettings {
  std::uint64_t seed = 1;
  std::size_t instances = 100;
  double resolution = 1e-3;
  friend bool operator==(const VerifySettings&, const VerifySettings&) = default;
};

struct RunConfig {
  std::filesystem::path input;
  /// Empty means out_dir / "distributions.json".
  std::filesystem::path distributions;
  std::filesystem::path out_dir = "out";

  IngestConfig ingest;
  std::size_t scenarios = kDefaultScenarioCount;

  ContractRules rules;
  SolverConfig solver;
  SweepSettings sweep;
  CurveSettings curves;
  VerifySettings verify;

  /// Hours to solve; empty means all 24.
  std::vector<int> hours;

  [[nodiscard]] std::filesystem::path distributions_path() const;
  [[nodiscard]] std::vector<int> selected_hours() const;
  /// Throws UsageError on any invalid field.
  void validate() const;
};

/// Built-in defaults, identical to tools/config/default_config.json.
[[nodiscard]] RunConfig default_run_config();

/// Overlays a JSON document on the defaults. Keys starting with '_' are
/// comments; any other unknown key is an error.
[[nodiscard]] RunConfig parse_run_config(std::string_view json_text);
[[nodiscard]] RunConfig load_run_config(const std::filesystem::path& path);
[[nodiscard]] std::string run_config_to_json(const RunConfig& cfg);

[[nodiscard]] std::string read_text_file(const std::filesystem::path& path);
/// Creates parent directories as needed.
void write_text_file(const std::filesystem::path& path, std::string_view text);

}  // namespace tlou::cli
