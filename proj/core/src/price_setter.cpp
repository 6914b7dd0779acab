#include "tlou/price_setter.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

namespace tlou {

namespace {

constexpr double kLazyViolationTolerance = 1e-9;

StepFunction breakpoint_skeleton(const std::vector<double>& breakpoints) {
  return StepFunction(breakpoints, std::vector<double>(breakpoints.size(), 0.0));
}

void require_interval(const Interval& iv, const char* name) {
  if (!(iv.min >= 0.0) || !(iv.max >= iv.min) || !std::isfinite(iv.max)) {
    throw std::invalid_argument(std::string("contract rules: ") + name +
                                " needs 0 <= min <= max < inf");
  }
}

}  // namespace

void ContractRules::validate() const {
  require_interval(booking_fee, "booking_fee");
  require_interval(higher_step_increase, "higher_step_increase");
  require_interval(lower_step_decrease, "lower_step_decrease");
  if (!(price_floor >= 0.0)) throw std::invalid_argument("contract rules: price_floor < 0");
}

void SolverConfig::validate() const {
  if (!(delta >= 0.0)) throw std::invalid_argument("solver config: delta must be >= 0");
  if (!(lexicographic_slack >= 0.0)) {
    throw std::invalid_argument("solver config: lexicographic_slack must be >= 0");
  }
  if (!(baseline > 0.0)) throw std::invalid_argument("solver config: baseline must be > 0");
  (void)breakpoint_skeleton(grid.lower);
  (void)breakpoint_skeleton(grid.higher);
}

const char* to_string(CandidateStatus status) {
  switch (status) {
    case CandidateStatus::feasible: return "feasible";
    case CandidateStatus::infeasible: return "infeasible";
    case CandidateStatus::solver_failure: return "solver_failure";
  }
  return "unknown";
}

PriceModel::PriceModel(DiscreteDistribution dist, ContractRules rules, SolverConfig cfg)
    : dist_(std::move(dist)),
      rules_(rules),
      cfg_(std::move(cfg)),
      lower_steps_(breakpoint_skeleton(cfg_.grid.lower)),
      higher_steps_(breakpoint_skeleton(cfg_.grid.higher)),
      candidates_(candidate_set(cfg_.grid.lower, dist_)) {
  rules_.validate();
  cfg_.validate();
  if (rules_.price_floor > cfg_.baseline) {
    throw std::invalid_argument("price floor exceeds the baseline price");
  }
  terms_.reserve(candidates_.size());
  for (double c : candidates_.capacities) {
    terms_.push_back({c, lower_steps_.step_index(c), higher_steps_.step_index(c),
                      load_mass(dist_, c)});
  }
}

lp::LinearExpr PriceModel::cost_expression(std::size_t l) const {
  const auto& t = terms_.at(l);
  lp::LinearExpr e;
  e.add(booking_fee_var(), t.capacity);
  e.add(lower_var(t.lower_step), t.mass.below);
  e.add(higher_var(t.higher_step), t.mass.above);
  return e;
}

lp::LinearExpr PriceModel::guarantee_expression(std::size_t k) const {
  const auto& t = terms_.at(k);
  lp::LinearExpr e;
  e.add(higher_var(t.higher_step), t.capacity);
  e.add(lower_var(t.lower_step), -t.capacity);
  return e;
}

double PriceModel::revenue_floor(double v) const {
  const double slack = std::abs(v) >= 1.0 ? cfg_.lexicographic_slack * std::abs(v)
                                          : cfg_.lexicographic_slack * 1e-2;
  return v - slack;
}

lp::LinearProgram PriceModel::build_lp(
    std::size_t k, Objective objective, std::span<const lp::Constraint> extra,
    const std::optional<std::vector<std::size_t>>& rows) const {
  if (k >= candidates_.size()) {
    throw std::out_of_range("candidate index " + std::to_string(k) + " out of range (" +
                            std::to_string(candidates_.size()) + " candidates)");
  }
  const double base = cfg_.baseline;
  const double floor = rules_.price_floor;
  lp::LinearProgram lp;
  lp.add_variable("K", rules_.booking_fee.min, rules_.booking_fee.max);
  for (std::size_t j = 0; j < cfg_.grid.lower.size(); ++j) {
    const double lo = j == 0 ? base : floor;
    lp.add_variable("L" + std::to_string(j), lo, base);
  }
  for (std::size_t j = 0; j < cfg_.grid.higher.size(); ++j) {
    const double lo = j == 0 ? base : std::max(floor, base);
    const double hi = j == 0 ? base : lp::kInfinity;
    lp.add_variable("H" + std::to_string(j), lo, hi);
  }

  // Contract rules on consecutive steps; min >= 0 also makes both curves monotone.
  for (std::size_t j = 1; j < cfg_.grid.lower.size(); ++j) {
    lp::LinearExpr drop;
    drop.add(lower_var(j - 1), 1.0).add(lower_var(j), -1.0);
    const std::string tag = std::to_string(j);
    lp.add_constraint(drop, lp::Relation::greater_equal, rules_.lower_step_decrease.min,
                      "ldec_min_" + tag);
    lp.add_constraint(drop, lp::Relation::less_equal, rules_.lower_step_decrease.max,
                      "ldec_max_" + tag);
  }
  for (std::size_t j = 1; j < cfg_.grid.higher.size(); ++j) {
    lp::LinearExpr rise;
    rise.add(higher_var(j), 1.0).add(higher_var(j - 1), -1.0);
    const std::string tag = std::to_string(j);
    lp.add_constraint(rise, lp::Relation::greater_equal, rules_.higher_step_increase.min,
                      "hinc_min_" + tag);
    lp.add_constraint(rise, lp::Relation::less_equal, rules_.higher_step_increase.max,
                      "hinc_max_" + tag);
  }

  // User optimality: cost(c_k) <= cost(c_l) - delta.
  const lp::LinearExpr own = cost_expression(k);
  auto add_optimality_row = [&](std::size_t l) {
    if (l == k) return;
    lp::LinearExpr diff = own;
    diff -= cost_expression(l);
    lp.add_constraint(std::move(diff), lp::Relation::less_equal, -cfg_.delta,
                      "opt_" + std::to_string(l));
  };
  if (rows) {
    for (std::size_t l : *rows) add_optimality_row(l);
  } else {
    for (std::size_t l = 0; l < candidates_.size(); ++l) add_optimality_row(l);
  }

  for (const auto& c : extra) lp.add_constraint(c);

  lp.set_objective(lp::Sense::maximize,
                   objective == Objective::revenue ? own : guarantee_expression(k));
  return lp;
}

TariffSetting PriceModel::setting_from(std::span<const double> values) const {
  const std::size_t nl = cfg_.grid.lower.size();
  const std::size_t nh = cfg_.grid.higher.size();
  std::vector<double> lower(values.begin() + 1, values.begin() + 1 + nl);
  std::vector<double> higher(values.begin() + 1 + nl, values.begin() + 1 + nl + nh);
  lower[0] = cfg_.baseline;
  higher[0] = cfg_.baseline;
  return TariffSetting(values[0], StepFunction(cfg_.grid.lower, std::move(lower)),
                       StepFunction(cfg_.grid.higher, std::move(higher)), cfg_.baseline);
}

PricingOption PriceModel::make_option(std::size_t k, std::span<const double> values) const {
  TariffSetting setting = setting_from(values);
  const double c = terms_.at(k).capacity;
  const double revenue = expected_cost(setting, c, dist_);
  const double g = tlou::guarantee(setting, c);
  const double m = margin(setting, dist_, c);
  return PricingOption{dist_.time_frame(), c, std::move(setting), revenue, g, m};
}

CandidateResult PriceModel::solve_candidate(std::size_t k) const {
  CandidateResult result;
  result.candidate_index = k;
  result.capacity = terms_.at(k).capacity;

  const lp::LpSolution stage1 = lp::solve(build_lp(k, Objective::revenue));
  ++result.lp_solves;
  result.revenue_rounds = 1;
  if (stage1.status == lp::SolveStatus::infeasible) {
    result.status = CandidateStatus::infeasible;
    return result;
  }
  if (!stage1.optimal()) {
    result.status = CandidateStatus::solver_failure;
    result.message = std::string("revenue stage: ") + lp::to_string(stage1.status) + " " +
                     stage1.message;
    return result;
  }
  result.revenue_bound = stage1.objective_value;

  const lp::Constraint floor{cost_expression(k), lp::Relation::greater_equal,
                             revenue_floor(stage1.objective_value), "revenue_floor"};
  const lp::LpSolution stage2 =
      lp::solve(build_lp(k, Objective::guarantee, std::span(&floor, 1)));
  ++result.lp_solves;
  if (!stage2.optimal()) {
    // Stage 1's optimum satisfies the floor, so anything but optimal is numerical.
    result.status = CandidateStatus::solver_failure;
    result.message = std::string("guarantee stage: ") + lp::to_string(stage2.status) + " " +
                     stage2.message;
    return result;
  }
  result.status = CandidateStatus::feasible;
  result.option = make_option(k, stage2.values);
  return result;
}

std::optional<std::size_t> PriceModel::most_violated_row(std::size_t k,
                                                         const TariffSetting& setting) const {
  const double own = expected_cost(setting, terms_[k].capacity, dist_);
  std::optional<std::size_t> worst;
  double worst_violation = kLazyViolationTolerance;
  for (std::size_t l = 0; l < terms_.size(); ++l) {
    if (l == k) continue;
    const double violation = own - expected_cost(setting, terms_[l].capacity, dist_) + cfg_.delta;
    if (violation > worst_violation) {
      worst_violation = violation;
      worst = l;
    }
  }
  return worst;
}

CandidateResult PriceModel::solve_candidate_lazy(std::size_t k) const {
  CandidateResult result;
  result.candidate_index = k;
  result.capacity = terms_.at(k).capacity;
  const std::size_t cap =
      cfg_.lazy_iteration_cap > 0 ? cfg_.lazy_iteration_cap : 10 * candidates_.size();

  std::vector<std::size_t> rows;
  // Runs one lexicographic stage with row generation; returns the final LP
  // solution or sets the failure fields of `result`.
  auto run_stage = [&](Objective objective,
                       std::span<const lp::Constraint> extra) -> std::optional<lp::LpSolution> {
    for (std::size_t round = 0; round < cap; ++round) {
      lp::LpSolution sol = lp::solve(build_lp(k, objective, extra, rows));
      ++result.lp_solves;
      if (sol.status == lp::SolveStatus::infeasible) {
        result.status = CandidateStatus::infeasible;
        return std::nullopt;
      }
      if (!sol.optimal()) {
        result.status = CandidateStatus::solver_failure;
        result.message = std::string(lp::to_string(sol.status)) + " " + sol.message;
        return std::nullopt;
      }
      const auto violated = most_violated_row(k, setting_from(sol.values));
      if (!violated) return sol;
      rows.push_back(*violated);
      ++result.constraints_added;
    }
    result.status = CandidateStatus::solver_failure;
    result.message = "lazy row generation hit the iteration cap of " + std::to_string(cap);
    return std::nullopt;
  };

  const auto stage1 = run_stage(Objective::revenue, {});
  result.revenue_rounds = result.lp_solves;
  if (!stage1) return result;
  result.revenue_bound = stage1->objective_value;

  const lp::Constraint floor{cost_expression(k), lp::Relation::greater_equal,
                             revenue_floor(stage1->objective_value), "revenue_floor"};
  const auto stage2 = run_stage(Objective::guarantee, std::span(&floor, 1));
  if (!stage2) {
    if (result.status == CandidateStatus::infeasible) {
      result.status = CandidateStatus::solver_failure;
      result.message = "guarantee stage infeasible after a feasible revenue stage";
    }
    return result;
  }
  result.status = CandidateStatus::feasible;
  result.option = make_option(k, stage2->values);
  return result;
}

lp::LinearProgram build_lp(const DiscreteDistribution& dist, std::size_t k,
                           const ContractRules& rules, const SolverConfig& cfg,
                           Objective objective, std::span<const lp::Constraint> extra) {
  return PriceModel(dist, rules, cfg).build_lp(k, objective, extra);
}

CandidateResult solve_candidate(const DiscreteDistribution& dist, std::size_t k,
                                const ContractRules& rules, const SolverConfig& cfg) {
  return PriceModel(dist, rules, cfg).solve_candidate(k);
}

CandidateResult solve_candidate_lazy(const DiscreteDistribution& dist, std::size_t k,
                                     const ContractRules& rules, const SolverConfig& cfg) {
  return PriceModel(dist, rules, cfg).solve_candidate_lazy(k);
}

std::size_t Menu::nonzero_option_count() const {
  return static_cast<std::size_t>(std::count_if(
      options.begin(), options.end(), [](const PricingOption& o) { return o.target_capacity > 0.0; }));
}

Menu menu(const DiscreteDistribution& dist, const ContractRules& rules,
          const SolverConfig& cfg) {
  const PriceModel model(dist, rules, cfg);
  Menu out;
  out.time_frame = dist.time_frame();
  out.candidates_total = model.candidates().size();
  for (std::size_t k = 0; k < model.candidates().size(); ++k) {
    CandidateResult r = cfg.lazy_mode ? model.solve_candidate_lazy(k) : model.solve_candidate(k);
    switch (r.status) {
      case CandidateStatus::feasible:
        out.options.push_back(std::move(*r.option));
        break;
      case CandidateStatus::infeasible:
        ++out.infeasible_count;
        break;
      case CandidateStatus::solver_failure:
        out.failures.push_back("candidate " + std::to_string(k) + " (capacity " +
                               std::to_string(r.capacity) + "): " + r.message);
        break;
    }
  }
  out.has_zero_option = !out.options.empty() && out.options.front().target_capacity == 0.0;
  return out;
}

std::vector<double> linear_grid(double first, double last, std::size_t count) {
  std::vector<double> grid;
  if (count == 0) return grid;
  if (count == 1) return {first};
  grid.reserve(count);
  const double step = (last - first) / static_cast<double>(count - 1);
  for (std::size_t i = 0; i + 1 < count; ++i) grid.push_back(first + step * static_cast<double>(i));
  grid.push_back(last);
  return grid;
}

DeltaSweep delta_max(const DiscreteDistribution& dist, const ContractRules& rules,
                     const SolverConfig& cfg, std::span<const double> delta_grid) {
  for (std::size_t i = 0; i < delta_grid.size(); ++i) {
    if (!(delta_grid[i] >= 0.0) || (i > 0 && !(delta_grid[i] > delta_grid[i - 1]))) {
      throw std::invalid_argument("delta grid must be non-negative and strictly increasing");
    }
  }
  DeltaSweep sweep;
  sweep.time_frame = dist.time_frame();
  for (double delta : delta_grid) {
    SolverConfig c = cfg;
    c.delta = delta;
    const Menu m = menu(dist, rules, c);
    const std::size_t count = m.nonzero_option_count();
    sweep.points.push_back({delta, count});
    if (count == 0 && !sweep.delta_max) sweep.delta_max = delta;
  }
  return sweep;
}

UtopiaReport utopia_check(const DiscreteDistribution& dist, std::size_t k,
                          const ContractRules& rules, const SolverConfig& cfg) {
  const PriceModel model(dist, rules, cfg);
  UtopiaReport report;
  report.candidate_index = k;
  report.capacity = model.candidates().capacities.at(k);

  const auto revenue_alone = lp::solve(model.build_lp(k, Objective::revenue));
  const auto guarantee_alone = lp::solve(model.build_lp(k, Objective::guarantee));
  const auto lex = model.solve_candidate(k);
  if (!revenue_alone.optimal() || !guarantee_alone.optimal() ||
      lex.status != CandidateStatus::feasible) {
    return report;
  }
  report.feasible = true;
  report.revenue_opt = revenue_alone.objective_value;
  report.guarantee_opt = guarantee_alone.objective_value;
  report.lex_revenue = lex.option->expected_revenue;
  report.lex_guarantee = lex.option->guarantee;
  report.revenue_gap = report.revenue_opt - report.lex_revenue;
  report.guarantee_gap = report.guarantee_opt - report.lex_guarantee;

  // The guarantee stage may give up revenue down to its floor; that slack is
  // part of the lexicographic procedure, not a conflict between objectives.
  const double revenue_allowance = report.revenue_opt - model.revenue_floor(report.revenue_opt);
  const double rev_tol = kUtopiaTolerance * std::max(1.0, std::abs(report.revenue_opt));
  const double g_tol = kUtopiaTolerance * std::max(1.0, std::abs(report.guarantee_opt));
  report.utopia_reached = report.revenue_gap <= revenue_allowance + rev_tol &&
                          report.guarantee_gap <= g_tol;
  return report;
}

}  // namespace tlou
