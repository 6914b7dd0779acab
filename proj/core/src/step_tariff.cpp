#include "tlou/step_tariff.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace tlou {

namespace {

void require_capacity(double c, const char* what) {
  if (!(c >= 0.0) || !std::isfinite(c)) {
    throw std::domain_error(std::string(what) + " must be finite and >= 0");
  }
}

}  // namespace

StepFunction::StepFunction(std::vector<double> breakpoints,
                           std::vector<double> values)
    : breakpoints_(std::move(breakpoints)), values_(std::move(values)) {
  if (breakpoints_.empty() || breakpoints_.size() != values_.size()) {
    throw std::invalid_argument(
        "step function: breakpoints and values must be nonempty and of equal length");
  }
  if (breakpoints_.front() != 0.0) {
    throw std::invalid_argument("step function: first breakpoint must be 0");
  }
  for (std::size_t j = 1; j < breakpoints_.size(); ++j) {
    if (!(breakpoints_[j] > breakpoints_[j - 1]) || !std::isfinite(breakpoints_[j])) {
      throw std::invalid_argument("step function: breakpoints must be strictly increasing");
    }
  }
  for (double v : values_) {
    if (!std::isfinite(v)) throw std::invalid_argument("step function: non-finite value");
  }
}

StepFunction StepFunction::constant(double value) { return {{0.0}, {value}}; }

std::size_t StepFunction::step_index(double capacity) const {
  require_capacity(capacity, "capacity");
  // upper_bound gives the first breakpoint > c; the step before it owns c.
  auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), capacity);
  return static_cast<std::size_t>(it - breakpoints_.begin()) - 1;
}

TariffSetting::TariffSetting(double booking_fee, StepFunction lower,
                             StepFunction higher, double baseline)
    : booking_fee(booking_fee),
      lower(std::move(lower)),
      higher(std::move(higher)),
      baseline(baseline) {
  if (!(booking_fee >= 0.0) || !std::isfinite(booking_fee)) {
    throw std::invalid_argument("tariff: booking fee must be >= 0");
  }
  if (this->lower.values()[0] != baseline || this->higher.values()[0] != baseline) {
    throw std::invalid_argument("tariff: both curves must start at the baseline price");
  }
  const auto lo = this->lower.values();
  for (std::size_t j = 1; j < lo.size(); ++j) {
    if (lo[j] > lo[j - 1] + kOrderTolerance) {
      throw std::invalid_argument("tariff: lower curve must be non-increasing");
    }
  }
  const auto hi = this->higher.values();
  for (std::size_t j = 1; j < hi.size(); ++j) {
    if (hi[j] < hi[j - 1] - kOrderTolerance) {
      throw std::invalid_argument("tariff: higher curve must be non-decreasing");
    }
  }
  auto check_gap = [this](double c) {
    if (this->higher(c) < this->lower(c) - kOrderTolerance) {
      throw std::invalid_argument("tariff: higher price below lower price at capacity " +
                                  std::to_string(c));
    }
  };
  for (double c : this->lower.breakpoints()) check_gap(c);
  for (double c : this->higher.breakpoints()) check_gap(c);
}

double cost(const TariffSetting& setting, double capacity, double consumption) {
  require_capacity(capacity, "capacity");
  require_capacity(consumption, "consumption");
  const double price =
      consumption <= capacity ? setting.lower(capacity) : setting.higher(capacity);
  return setting.booking_fee * capacity + price * consumption;
}

ScenarioPartition partition(const DiscreteDistribution& dist, double capacity) {
  require_capacity(capacity, "capacity");
  ScenarioPartition parts;
  for (std::size_t i = 0; i < dist.size(); ++i) {
    (dist.load(i) <= capacity ? parts.below : parts.above).push_back(i);
  }
  return parts;
}

LoadMass load_mass(const DiscreteDistribution& dist, double capacity) {
  require_capacity(capacity, "capacity");
  LoadMass mass;
  for (std::size_t i = 0; i < dist.size(); ++i) {
    const double xp = dist.load(i) * dist.prob(i);
    (dist.load(i) <= capacity ? mass.below : mass.above) += xp;
  }
  return mass;
}

double expected_cost(const TariffSetting& setting, double capacity,
                     const DiscreteDistribution& dist) {
  const LoadMass mass = load_mass(dist, capacity);
  return setting.booking_fee * capacity + setting.lower(capacity) * mass.below +
         setting.higher(capacity) * mass.above;
}

double relative_cost(const TariffSetting& setting, double capacity,
                     double consumption) {
  if (!(consumption > 0.0)) {
    throw std::domain_error("relative cost is undefined for consumption <= 0");
  }
  return cost(setting, capacity, consumption) / consumption;
}

double guarantee(const TariffSetting& setting, double capacity) {
  require_capacity(capacity, "capacity");
  return capacity * (setting.higher(capacity) - setting.lower(capacity));
}

}  // namespace tlou
