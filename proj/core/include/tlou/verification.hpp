#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "tlou/best_response.hpp"
#include "tlou/distribution.hpp"
#include "tlou/step_tariff.hpp"

namespace tlou {

struct RandomInstance {
  TariffSetting setting;
  DiscreteDistribution dist;
};

struct InstanceShape {
  std::size_t min_scenarios = 3;
  std::size_t max_scenarios = 10;
  std::size_t min_steps = 2;
  std::size_t max_steps = 5;
  double max_load = 6.0;
  /// Loads and breakpoints are drawn on this lattice so that they collide
  /// now and then.
  double lattice = 0.05;
};

/// Random valid tariff and distribution. Deterministic for a given engine state.
[[nodiscard]] RandomInstance random_instance(std::mt19937_64& rng, const InstanceShape& shape = {});

/// Expected cost with both curves evaluated left-continuously: a breakpoint
/// still bills the previous step. Deliberately wrong; the oracle check
/// must catch it.
[[nodiscard]] double left_continuous_expected_cost(const TariffSetting& setting, double capacity,
                                                   const DiscreteDistribution& dist);

struct OracleCheckOptions {
  std::uint64_t seed = 1;
  std::size_t instances = 100;
  double resolution = kDefaultOracleResolution;
  double tolerance = 1e-9;
  /// Evaluate costs left-continuously (mutation test of the checker).
  bool corrupt_right_continuity = false;
  InstanceShape shape;
};

struct OracleMismatch {
  std::size_t instance = 0;
  std::string setting_json;
  std::vector<double> loads;
  std::vector<double> probs;
  BestResponse candidate_best;
  BestResponse brute_best;
  bool brute_in_candidate_set = false;
};

struct OracleReport {
  std::size_t instances = 0;
  std::vector<OracleMismatch> mismatches;
  double seconds = 0.0;

  [[nodiscard]] bool passed() const { return mismatches.empty(); }
};

/// Compares the candidate-set argmin with the dense grid argmin on random
/// instances.
[[nodiscard]] OracleReport run_oracle_check(const OracleCheckOptions& options);

}  // namespace tlou
