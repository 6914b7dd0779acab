#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "tlou/distribution.hpp"

namespace tlou {

/// Piecewise-constant price curve over booked capacity.
///
/// breakpoints[0] is 0 and breakpoints are strictly increasing. Evaluation is
/// right-continuous: at capacity c the value is values[j] for the largest j
/// with breakpoints[j] <= c. The last step extends to +infinity.
class StepFunction {
 public:
  StepFunction(std::vector<double> breakpoints, std::vector<double> values);

  /// Flat curve: a single step at 0.
  static StepFunction constant(double value);

  [[nodiscard]] double operator()(double capacity) const {
    return values_[step_index(capacity)];
  }
  [[nodiscard]] std::size_t step_index(double capacity) const;

  [[nodiscard]] std::span<const double> breakpoints() const {
    return breakpoints_;
  }
  [[nodiscard]] std::span<const double> values() const { return values_; }
  [[nodiscard]] std::size_t size() const { return values_.size(); }

  friend bool operator==(const StepFunction&, const StepFunction&) = default;

 private:
  std::vector<double> breakpoints_;
  std::vector<double> values_;
};

/// Complete TLOU configuration for one time frame.
struct TariffSetting {
  /// Tolerance used when checking the ordering invariants. Settings produced
  /// by the LP satisfy them only up to round-off.
  static constexpr double kOrderTolerance = 1e-9;

  TariffSetting(double booking_fee, StepFunction lower, StepFunction higher,
                double baseline);

  double booking_fee;   // K, currency per booked kWh
  StepFunction lower;   // pi^L over C^L, non-increasing
  StepFunction higher;  // pi^H over C^H, non-decreasing
  double baseline;      // pi_0, the time-of-use price

  friend bool operator==(const TariffSetting&, const TariffSetting&) = default;
};

/// Split of scenario indices by a booked capacity.
struct ScenarioPartition {
  std::vector<std::size_t> below;  // x <= c
  std::vector<std::size_t> above;  // x > c
};

/// Billed cost of consuming `consumption` after booking `capacity`.
/// Consumption equal to the capacity is billed at the lower price.
[[nodiscard]] double cost(const TariffSetting& setting, double capacity,
                          double consumption);

[[nodiscard]] ScenarioPartition partition(const DiscreteDistribution& dist,
                                          double capacity);

/// Expected cost of booking `capacity` under `dist`.
[[nodiscard]] double expected_cost(const TariffSetting& setting,
                                   double capacity,
                                   const DiscreteDistribution& dist);

/// cost / consumption. Throws std::domain_error for consumption <= 0.
[[nodiscard]] double relative_cost(const TariffSetting& setting,
                                   double capacity, double consumption);

/// Cost jump at the capacity: c * (pi^H(c) - pi^L(c)).
[[nodiscard]] double guarantee(const TariffSetting& setting, double capacity);

/// Sums of x*p over the scenarios at or below, and strictly above, `capacity`.
struct LoadMass {
  double below = 0.0;
  double above = 0.0;
};
[[nodiscard]] LoadMass load_mass(const DiscreteDistribution& dist,
                                 double capacity);

}  // namespace tlou
