#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace tlou {

/// Finite consumption distribution for one time frame: scenario loads (kWh)
/// with their probabilities.
///
/// Construction sorts scenarios by load and merges exact duplicates by summing
/// their probabilities. The resulting loads are strictly increasing and
/// non-negative, every probability is positive, and the probabilities sum to
/// one within 1e-9. Violations throw std::invalid_argument.
class DiscreteDistribution {
 public:
  static constexpr double kProbabilityTolerance = 1e-9;

  DiscreteDistribution(std::vector<double> loads, std::vector<double> probs,
                       int time_frame = 0, std::size_t sample_count = 0);

  [[nodiscard]] std::span<const double> loads() const { return loads_; }
  [[nodiscard]] std::span<const double> probs() const { return probs_; }
  [[nodiscard]] std::size_t size() const { return loads_.size(); }
  [[nodiscard]] double load(std::size_t i) const { return loads_[i]; }
  [[nodiscard]] double prob(std::size_t i) const { return probs_[i]; }

  /// Hour-of-day label (0-23).
  [[nodiscard]] int time_frame() const { return time_frame_; }
  /// Number of raw observations the distribution was estimated from (0 when
  /// built by hand).
  [[nodiscard]] std::size_t sample_count() const { return sample_count_; }

  [[nodiscard]] double mean() const;
  [[nodiscard]] double max_load() const { return loads_.back(); }

  friend bool operator==(const DiscreteDistribution&,
                         const DiscreteDistribution&) = default;

 private:
  std::vector<double> loads_;
  std::vector<double> probs_;
  int time_frame_ = 0;
  std::size_t sample_count_ = 0;
};

}  // namespace tlou
