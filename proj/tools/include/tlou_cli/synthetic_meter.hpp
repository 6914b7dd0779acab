#pragma once

#include <array>
#include <chrono>
#include <cstdint>
#include <ostream>

namespace tlou::cli {

/// Household meter data in the layout of the public one-minute household
/// power consumption dataset: `;`-separated, d/m/yyyy dates, '?' for gaps.
struct SyntheticMeterConfig {
  std::uint64_t seed = 42;
  int days = 180;
  std::chrono::year_month_day start{std::chrono::year{2006}, std::chrono::month{12},
                                    std::chrono::day{16}};
  int start_minute = 17 * 60 + 24;
  /// Chance that a single reading is missing.
  double missing_rate = 0.005;
  /// Chance per day of a multi-hour outage.
  double outage_rate = 0.04;
  /// Mean active power (kW) per hour of day.
  std::array<double, 24> profile{0.55, 0.45, 0.42, 0.40, 0.40, 0.45, 0.75, 1.25,
                                 1.15, 0.85, 0.80, 0.85, 0.95, 0.90, 0.75, 0.70,
                                 0.80, 1.05, 1.40, 1.65, 1.70, 1.55, 1.15, 0.75};
};

/// Writes header and rows. Output is a pure function of the config.
void write_synthetic_meter(std::ostream& out, const SyntheticMeterConfig& cfg);

}  // namespace tlou::cli
