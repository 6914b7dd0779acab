#include "tlou/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>

namespace tlou {

DiscreteDistribution::DiscreteDistribution(std::vector<double> loads,
                                           std::vector<double> probs,
                                           int time_frame,
                                           std::size_t sample_count)
    : time_frame_(time_frame), sample_count_(sample_count) {
  if (loads.size() != probs.size()) {
    throw std::invalid_argument("distribution: loads and probs differ in length");
  }
  if (loads.empty()) {
    throw std::invalid_argument("distribution: empty support");
  }
  if (time_frame < 0 || time_frame > 23) {
    throw std::invalid_argument("distribution: time frame must be in 0..23, got " +
                                std::to_string(time_frame));
  }

  std::vector<std::pair<double, double>> scenarios;
  scenarios.reserve(loads.size());
  for (std::size_t i = 0; i < loads.size(); ++i) {
    if (!std::isfinite(loads[i]) || loads[i] < 0.0) {
      throw std::invalid_argument("distribution: load must be finite and >= 0");
    }
    if (!std::isfinite(probs[i]) || probs[i] <= 0.0) {
      throw std::invalid_argument("distribution: probabilities must be > 0");
    }
    scenarios.emplace_back(loads[i], probs[i]);
  }
  std::stable_sort(scenarios.begin(), scenarios.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });

  for (const auto& [x, p] : scenarios) {
    if (!loads_.empty() && loads_.back() == x) {
      probs_.back() += p;
    } else {
      loads_.push_back(x);
      probs_.push_back(p);
    }
  }

  const double total = std::accumulate(probs_.begin(), probs_.end(), 0.0);
  if (std::abs(total - 1.0) > kProbabilityTolerance) {
    throw std::invalid_argument("distribution: probabilities sum to " +
                                std::to_string(total) + ", expected 1");
  }
}

double DiscreteDistribution::mean() const {
  double m = 0.0;
  for (std::size_t i = 0; i < loads_.size(); ++i) m += loads_[i] * probs_[i];
  return m;
}

}  // namespace tlou
