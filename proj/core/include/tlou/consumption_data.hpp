#pragma once

#include <array>
#include <chrono>
#include <cstddef>
#include <istream>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "tlou/distribution.hpp"

namespace tlou {

/// Energy consumed during one wall-clock hour of one day.
struct HourlySample {
  std::chrono::year_month_day date;
  int hour = 0;
  double energy = 0.0;    // kWh
  double coverage = 0.0;  // fraction of expected readings present, in [0, 1]

  friend bool operator==(const HourlySample&, const HourlySample&) = default;
};

struct IngestConfig {
  /// Hours with fewer than this fraction of expected readings are dropped.
  double min_coverage = 0.5;
  /// Number of leading rows used to detect the sampling cadence.
  std::size_t cadence_probe_rows = 100;
};

struct IngestDiagnostics {
  std::size_t rows_read = 0;
  std::size_t rows_skipped = 0;    // unparseable rows
  std::size_t missing_values = 0;  // rows whose active power is '?'
  std::size_t hours_kept = 0;
  std::size_t hours_dropped = 0;   // below the coverage threshold
  int cadence_seconds = 60;
  /// First few unparseable rows as "line N: reason", for error reporting.
  std::vector<std::string> skipped_examples;
};

struct IngestResult {
  std::vector<HourlySample> samples;  // sorted by (date, hour)
  IngestDiagnostics diagnostics;
};

/// Header or structural problems in the meter file.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Reads semicolon-separated household meter data with header
/// `Date;Time;Global_active_power;...`, dates as d/m/yyyy, times as HH:MM:SS
/// and '?' for missing values. Active power (kW) is averaged over each
/// (date, hour) which, over one hour, is the energy in kWh.
///
/// Throws ParseError when the header does not name the expected leading
/// columns. Rows that fail to parse are skipped and counted.
[[nodiscard]] IngestResult ingest_power_csv(std::istream& source,
                                            const IngestConfig& cfg = {});

using HourlyGroups = std::array<std::vector<double>, 24>;

/// Energies grouped by hour of day, in input order.
[[nodiscard]] HourlyGroups group_by_hour(std::span<const HourlySample> samples);

/// Equal-mass quantile binning of `energies` into at most `n_scenarios`
/// scenarios. Each scenario is the mean of its bin weighted by the bin's
/// empirical mass. Runs of identical values never straddle two bins, so
/// the result can have fewer scenarios than requested.
///
/// Throws std::domain_error on empty input or n_scenarios outside
/// [1, energies.size()].
[[nodiscard]] DiscreteDistribution discretize(std::span<const double> energies,
                                              std::size_t n_scenarios,
                                              int time_frame = 0);

inline constexpr std::size_t kDefaultScenarioCount = 8;

}  // namespace tlou
