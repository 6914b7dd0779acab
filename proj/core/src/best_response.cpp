#include "tlou/best_response.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>

namespace tlou {

namespace {

double default_expected_cost(const TariffSetting& s, double c,
                             const DiscreteDistribution& d) {
  return expected_cost(s, c, d);
}

BestResponse argmin_over(std::span<const double> capacities, const TariffSetting& setting,
                         const DiscreteDistribution& dist, const ExpectedCostFn& evaluate) {
  BestResponse best{0.0, std::numeric_limits<double>::infinity()};
  // capacities are ascending, so a strict improvement is needed to move right.
  for (double c : capacities) {
    const double value = evaluate(setting, c, dist);
    if (value < best.expected_cost - kTieTolerance) best = {c, value};
  }
  return best;
}

}  // namespace

bool CandidateSet::contains(double capacity, double tol) const {
  return index_of(capacity, tol) < size();
}

std::size_t CandidateSet::index_of(double capacity, double tol) const {
  for (std::size_t i = 0; i < capacities.size(); ++i) {
    if (std::abs(capacities[i] - capacity) <= tol) return i;
  }
  return capacities.size();
}

CandidateSet candidate_set(std::span<const double> lower_breakpoints,
                           const DiscreteDistribution& dist) {
  std::vector<std::pair<double, CandidateSource>> raw;
  raw.emplace_back(0.0, CandidateSource::zero);
  for (double c : lower_breakpoints) {
    if (!(c >= 0.0)) throw std::invalid_argument("candidate set: negative breakpoint");
    raw.emplace_back(c, CandidateSource::lower_breakpoint);
  }
  for (double x : dist.loads()) raw.emplace_back(x, CandidateSource::scenario_load);
  // Ties in value keep the enum order: zero, then breakpoint, then load.
  std::stable_sort(raw.begin(), raw.end(), [](const auto& a, const auto& b) {
    return a.first < b.first || (a.first == b.first && a.second < b.second);
  });

  CandidateSet set;
  for (const auto& [c, source] : raw) {
    if (!set.capacities.empty() && c - set.capacities.back() <= kCandidateMergeTolerance) {
      // Keep the larger value so a load sitting just above a breakpoint still
      // counts as covered by the merged candidate. Zero stays exactly zero.
      if (set.sources.back() != CandidateSource::zero) set.capacities.back() = c;
      continue;
    }
    set.capacities.push_back(c);
    set.sources.push_back(source);
  }
  return set;
}

BestResponse user_best_capacity(const TariffSetting& setting,
                                const DiscreteDistribution& dist) {
  return user_best_capacity(setting, dist, default_expected_cost);
}

BestResponse user_best_capacity(const TariffSetting& setting,
                                const DiscreteDistribution& dist,
                                const ExpectedCostFn& evaluate) {
  const CandidateSet set = candidate_set(setting.lower.breakpoints(), dist);
  return argmin_over(set.capacities, setting, dist, evaluate);
}

BestResponse brute_force_best(const TariffSetting& setting,
                              const DiscreteDistribution& dist, double resolution) {
  return brute_force_best(setting, dist, resolution, default_expected_cost);
}

BestResponse brute_force_best(const TariffSetting& setting,
                              const DiscreteDistribution& dist, double resolution,
                              const ExpectedCostFn& evaluate) {
  if (!(resolution > 0.0)) {
    throw std::invalid_argument("brute force: resolution must be > 0");
  }
  const auto lower_bp = setting.lower.breakpoints();
  const auto higher_bp = setting.higher.breakpoints();
  const double max_breakpoint = std::max(lower_bp.back(), higher_bp.back());
  const double upper = dist.max_load() + max_breakpoint;

  std::vector<double> grid;
  const auto steps = static_cast<std::size_t>(std::floor(upper / resolution));
  grid.reserve(steps + 1 + 3 * (lower_bp.size() + higher_bp.size() + dist.size()));
  for (std::size_t i = 0; i <= steps; ++i) grid.push_back(static_cast<double>(i) * resolution);

  const double nudge = resolution / 10.0;
  auto add_event = [&](double e) {
    grid.push_back(e);
    grid.push_back(e + nudge);
    if (e - nudge >= 0.0) grid.push_back(e - nudge);
  };
  add_event(0.0);
  for (double c : lower_bp) add_event(c);
  for (double c : higher_bp) add_event(c);
  for (double x : dist.loads()) add_event(x);

  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  return argmin_over(grid, setting, dist, evaluate);
}

double margin(const TariffSetting& setting, const DiscreteDistribution& dist,
              double capacity) {
  const CandidateSet set = candidate_set(setting.lower.breakpoints(), dist);
  const double own = expected_cost(setting, capacity, dist);
  double best = std::numeric_limits<double>::infinity();
  for (double c : set.capacities) {
    if (std::abs(c - capacity) <= kCandidateMergeTolerance) continue;
    best = std::min(best, expected_cost(setting, c, dist) - own);
  }
  return best;
}

}  // namespace tlou
