#pragma once

#include <array>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "tlou/distribution.hpp"
#include "tlou/price_setter.hpp"
#include "tlou/step_tariff.hpp"

namespace tlou {

/// Malformed or schema-violating JSON/CSV input.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// One slot per hour of day; empty when the hour had no usable samples.
using HourlyDistributions = std::array<std::optional<DiscreteDistribution>, 24>;

// Numbers are written in shortest round-trip form, so every reader below
// restores bit-identical doubles.

/// {"booking_fee", "baseline", "lower": {"breakpoints", "values"}, "higher": {...}}
[[nodiscard]] std::string tariff_to_json(const TariffSetting& setting);
[[nodiscard]] TariffSetting tariff_from_json(std::string_view text);

/// Array of 24 {"hour", "loads", "probs", "n_samples"} objects.
[[nodiscard]] std::string distributions_to_json(const HourlyDistributions& dists);
[[nodiscard]] HourlyDistributions distributions_from_json(std::string_view text);

[[nodiscard]] std::string option_to_json(const PricingOption& option);
[[nodiscard]] PricingOption option_from_json(std::string_view text);

/// {"hour", "options": [...], "diagnostics": {"candidates_total",
/// "infeasible_count", "solver_failures", "has_zero_option"}}
[[nodiscard]] std::string menu_to_json(const Menu& menu);
[[nodiscard]] Menu menu_from_json(std::string_view text);

/// CSV with header hour,delta,nonzero_option_count.
[[nodiscard]] std::string delta_sweep_to_csv(std::span<const DeltaSweep> sweeps);
[[nodiscard]] std::vector<DeltaSweep> delta_sweep_from_csv(std::string_view text);

/// Shortest decimal text that parses back to the same double.
[[nodiscard]] std::string format_double(double value);

/// Minimal comma-separated table: header row plus string cells.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  /// Column position by name; throws FormatError when absent.
  [[nodiscard]] std::size_t column(std::string_view name) const;
};
[[nodiscard]] CsvTable parse_csv(std::string_view text);
[[nodiscard]] std::string to_csv(const CsvTable& table);

}  // namespace tlou
