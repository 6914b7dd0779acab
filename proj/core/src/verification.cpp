#include "tlou/verification.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <set>

#include "tlou/serialization.hpp"

namespace tlou {

namespace {

double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

std::size_t uniform_count(std::mt19937_64& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

// Distinct positive lattice points in (0, max].
std::vector<double> lattice_points(std::mt19937_64& rng, std::size_t count, double max,
                                   double lattice) {
  const auto slots = static_cast<long>(std::floor(max / lattice));
  std::set<long> picked;
  while (picked.size() < count) {
    picked.insert(std::uniform_int_distribution<long>(1, slots)(rng));
  }
  std::vector<double> out;
  for (long s : picked) out.push_back(static_cast<double>(s) * lattice);
  return out;
}

double left_value(const StepFunction& f, double c) {
  const auto bp = f.breakpoints();
  // Largest j with breakpoint < c; the first step owns c = 0.
  auto it = std::lower_bound(bp.begin(), bp.end(), c);
  const auto j = it == bp.begin() ? 0 : static_cast<std::size_t>(it - bp.begin()) - 1;
  return f.values()[j];
}

}  // namespace

RandomInstance random_instance(std::mt19937_64& rng, const InstanceShape& shape) {
  const std::size_t n = uniform_count(rng, shape.min_scenarios, shape.max_scenarios);
  std::vector<double> loads = lattice_points(rng, n, shape.max_load, shape.lattice);
  std::vector<double> probs(n);
  double total = 0.0;
  for (auto& p : probs) {
    p = uniform(rng, 0.05, 1.0);
    total += p;
  }
  for (auto& p : probs) p /= total;

  const double baseline = uniform(rng, 0.5, 1.5);
  auto make_curve = [&](bool rising) {
    const std::size_t steps = uniform_count(rng, shape.min_steps, shape.max_steps);
    std::vector<double> bps{0.0};
    for (double c : lattice_points(rng, steps - 1, shape.max_load, shape.lattice)) bps.push_back(c);
    std::vector<double> values{baseline};
    for (std::size_t j = 1; j < steps; ++j) {
      const double step = rising ? uniform(rng, 0.01, 0.5) : uniform(rng, 0.01, 0.3);
      values.push_back(rising ? values.back() + step : std::max(0.0, values.back() - step));
    }
    return StepFunction(std::move(bps), std::move(values));
  };
  StepFunction lower = make_curve(false);
  StepFunction higher = make_curve(true);
  const double fee = uniform(rng, 0.01, 0.5);
  return RandomInstance{TariffSetting(fee, std::move(lower), std::move(higher), baseline),
                        DiscreteDistribution(std::move(loads), std::move(probs))};
}

double left_continuous_expected_cost(const TariffSetting& setting, double capacity,
                                     const DiscreteDistribution& dist) {
  const LoadMass mass = load_mass(dist, capacity);
  return setting.booking_fee * capacity + left_value(setting.lower, capacity) * mass.below +
         left_value(setting.higher, capacity) * mass.above;
}

OracleReport run_oracle_check(const OracleCheckOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  std::mt19937_64 rng(options.seed);
  const ExpectedCostFn evaluate =
      options.corrupt_right_continuity
          ? ExpectedCostFn(left_continuous_expected_cost)
          : ExpectedCostFn([](const TariffSetting& s, double c, const DiscreteDistribution& d) {
              return expected_cost(s, c, d);
            });

  OracleReport report;
  for (std::size_t i = 0; i < options.instances; ++i) {
    const RandomInstance inst = random_instance(rng, options.shape);
    const BestResponse cand = user_best_capacity(inst.setting, inst.dist, evaluate);
    const BestResponse brute =
        brute_force_best(inst.setting, inst.dist, options.resolution, evaluate);
    const CandidateSet set = candidate_set(inst.setting.lower.breakpoints(), inst.dist);
    const bool member = set.contains(brute.capacity);
    ++report.instances;
    if (member && std::abs(brute.expected_cost - cand.expected_cost) <= options.tolerance) {
      continue;
    }
    report.mismatches.push_back(OracleMismatch{
        i, tariff_to_json(inst.setting),
        std::vector<double>(inst.dist.loads().begin(), inst.dist.loads().end()),
        std::vector<double>(inst.dist.probs().begin(), inst.dist.probs().end()), cand, brute,
        member});
  }
  report.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

}  // namespace tlou
