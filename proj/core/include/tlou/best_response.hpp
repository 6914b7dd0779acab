#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "tlou/distribution.hpp"
#include "tlou/step_tariff.hpp"

namespace tlou {

enum class CandidateSource { zero, lower_breakpoint, scenario_load };

/// Capacities that can be optimal for the user: {0}, the lower-curve
/// breakpoints and the scenario loads. Higher-curve breakpoints never are,
/// since crossing one only raises the expected cost.
struct CandidateSet {
  std::vector<double> capacities;       // strictly increasing, capacities[0] == 0
  std::vector<CandidateSource> sources;  // one per capacity

  [[nodiscard]] std::size_t size() const { return capacities.size(); }
  [[nodiscard]] bool contains(double capacity, double tol = 1e-9) const;
  /// Index of `capacity` or size() when absent.
  [[nodiscard]] std::size_t index_of(double capacity, double tol = 1e-9) const;
};

/// Values within this distance (kWh) are treated as one candidate.
inline constexpr double kCandidateMergeTolerance = 1e-9;

/// Two expected costs closer than this are a tie; ties go to the smaller
/// capacity.
inline constexpr double kTieTolerance = 1e-12;

[[nodiscard]] CandidateSet candidate_set(std::span<const double> lower_breakpoints,
                                         const DiscreteDistribution& dist);

struct BestResponse {
  double capacity = 0.0;
  double expected_cost = 0.0;
};

using ExpectedCostFn =
    std::function<double(const TariffSetting&, double, const DiscreteDistribution&)>;

/// The user's cheapest booking among the candidate set.
[[nodiscard]] BestResponse user_best_capacity(const TariffSetting& setting,
                                              const DiscreteDistribution& dist);
[[nodiscard]] BestResponse user_best_capacity(const TariffSetting& setting,
                                              const DiscreteDistribution& dist,
                                              const ExpectedCostFn& evaluate);

inline constexpr double kDefaultOracleResolution = 1e-3;

/// Grid-search argmin of the expected cost over [0, max load + max
/// breakpoint] at step `resolution`, plus every event point (0, breakpoints
/// of both curves, loads) and each event point shifted by +/- resolution/10.
/// Independent of the candidate-set argument; used to check it.
[[nodiscard]] BestResponse brute_force_best(const TariffSetting& setting,
                                            const DiscreteDistribution& dist,
                                            double resolution = kDefaultOracleResolution);
[[nodiscard]] BestResponse brute_force_best(const TariffSetting& setting,
                                            const DiscreteDistribution& dist,
                                            double resolution,
                                            const ExpectedCostFn& evaluate);

/// min over candidates c != capacity of expected_cost(c) - expected_cost(capacity).
/// +infinity when `capacity` is the only candidate.
[[nodiscard]] double margin(const TariffSetting& setting,
                            const DiscreteDistribution& dist, double capacity);

}  // namespace tlou
