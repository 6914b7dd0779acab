#pragma once

#include <vector>

#include "tlou/distribution.hpp"
#include "tlou/step_tariff.hpp"

namespace tlou::testing {

// Toy tariff: K = 0.1, pi0 = 1, lower {0:1.0, 2:0.8}, higher {0:1.0, 3:1.3}.
inline TariffSetting toy_tariff(double booking_fee = 0.1) {
  return TariffSetting(booking_fee, StepFunction({0.0, 2.0}, {1.0, 0.8}),
                       StepFunction({0.0, 3.0}, {1.0, 1.3}), 1.0);
}

// Toy distribution: loads (1, 2.5, 4) with probabilities (0.3, 0.5, 0.2).
inline DiscreteDistribution toy_distribution(int hour = 0) {
  return DiscreteDistribution({1.0, 2.5, 4.0}, {0.3, 0.5, 0.2}, hour);
}

inline TariffSetting flat_tariff(double baseline = 1.0) {
  return TariffSetting(0.0, StepFunction::constant(baseline), StepFunction::constant(baseline),
                       baseline);
}

// Expected cost straight from the per-scenario billing rule, summed over
// scenarios. Shares nothing with expected_cost() beyond StepFunction lookup.
inline double scenario_sum_cost(const TariffSetting& s, double c, const DiscreteDistribution& d) {
  double total = 0.0;
  for (std::size_t i = 0; i < d.size(); ++i) {
    const double x = d.load(i);
    const double price = x <= c ? s.lower(c) : s.higher(c);
    total += d.prob(i) * (s.booking_fee * c + price * x);
  }
  return total;
}

}  // namespace tlou::testing
