#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tlou/best_response.hpp"
#include "tlou/distribution.hpp"
#include "tlou/lp.hpp"
#include "tlou/step_tariff.hpp"

namespace tlou {

struct Interval {
  double min = 0.0;
  double max = 0.0;
  friend bool operator==(const Interval&, const Interval&) = default;
};

/// Contractual limits on the price structure. Step bounds apply to each
/// consecutive pair of curve values: higher[j] - higher[j-1] and
/// lower[j-1] - lower[j] must lie in their interval.
struct ContractRules {
  Interval booking_fee{0.01, 0.5};
  Interval higher_step_increase{0.01, 0.5};
  Interval lower_step_decrease{0.01, 0.5};
  double price_floor = 0.01;

  /// Throws std::invalid_argument when a bound is negative or inverted.
  void validate() const;
  friend bool operator==(const ContractRules&, const ContractRules&) = default;
};

/// Fixed capacity breakpoints of the two price curves. Both start at 0.
struct PriceGrid {
  std::vector<double> lower{0.0};
  std::vector<double> higher{0.0};
  friend bool operator==(const PriceGrid&, const PriceGrid&) = default;
};

struct SolverConfig {
  /// Required expected-cost advantage of the targeted capacity over every
  /// other candidate (user inertia).
  double delta = 0.05;
  /// Relative slack on the revenue floor of the guarantee stage.
  double lexicographic_slack = 1e-7;
  bool lazy_mode = false;
  /// 0 means 10 * |candidates|.
  std::size_t lazy_iteration_cap = 0;
  double baseline = 1.0;
  PriceGrid grid;

  void validate() const;
};

enum class Objective { revenue, guarantee };

/// One menu entry: a tariff under which the user's best booking is
/// `target_capacity`.
struct PricingOption {
  int time_frame = 0;
  double target_capacity = 0.0;
  TariffSetting setting;
  double expected_revenue = 0.0;
  double guarantee = 0.0;
  double margin = 0.0;
};

enum class CandidateStatus { feasible, infeasible, solver_failure };

[[nodiscard]] const char* to_string(CandidateStatus status);

struct CandidateResult {
  CandidateStatus status = CandidateStatus::infeasible;
  std::optional<PricingOption> option;
  std::size_t candidate_index = 0;
  double capacity = 0.0;
  /// Revenue-stage optimum, when stage 1 was solved.
  double revenue_bound = 0.0;
  /// LP solves performed (lazy mode: one per round).
  std::size_t lp_solves = 0;
  /// LP solves spent on the revenue stage.
  std::size_t revenue_rounds = 0;
  /// Optimality rows added lazily (0 in full mode).
  std::size_t constraints_added = 0;
  std::string message;
};

/// Builds and solves the upper-level LPs for one time frame. Decision
/// variables are the booking fee and the step values of both curves; the
/// breakpoints are fixed by the grid, which fixes the candidate set and makes
/// every user-optimality row linear.
class PriceModel {
 public:
  PriceModel(DiscreteDistribution dist, ContractRules rules, SolverConfig cfg);

  [[nodiscard]] const DiscreteDistribution& distribution() const { return dist_; }
  [[nodiscard]] const ContractRules& rules() const { return rules_; }
  [[nodiscard]] const SolverConfig& config() const { return cfg_; }
  [[nodiscard]] const CandidateSet& candidates() const { return candidates_; }

  /// Expected cost of booking candidate `l`, linear in the decision variables.
  [[nodiscard]] lp::LinearExpr cost_expression(std::size_t l) const;
  /// c_k * (higher step value - lower step value) at candidate `k`.
  [[nodiscard]] lp::LinearExpr guarantee_expression(std::size_t k) const;

  /// LP for candidate `k`. `rows` selects which optimality rows
  /// (cost_k <= cost_l - delta) to include; nullopt includes every l != k.
  [[nodiscard]] lp::LinearProgram build_lp(
      std::size_t k, Objective objective, std::span<const lp::Constraint> extra = {},
      const std::optional<std::vector<std::size_t>>& rows = std::nullopt) const;

  /// Converts an LP assignment into a TariffSetting; anchors are the baseline.
  [[nodiscard]] TariffSetting setting_from(std::span<const double> values) const;

  /// Lexicographic solve: maximize revenue, then maximize the guarantee while
  /// keeping revenue within the slack of the stage-1 optimum.
  [[nodiscard]] CandidateResult solve_candidate(std::size_t k) const;
  /// Same contract, adding the most violated optimality row per round.
  [[nodiscard]] CandidateResult solve_candidate_lazy(std::size_t k) const;

  /// Revenue floor used by the guarantee stage for stage-1 optimum `v`.
  [[nodiscard]] double revenue_floor(double v) const;

  // Variable layout: booking fee first, then lower values, then higher values.
  [[nodiscard]] lp::VariableId booking_fee_var() const { return {0}; }
  [[nodiscard]] lp::VariableId lower_var(std::size_t j) const { return {1 + j}; }
  [[nodiscard]] lp::VariableId higher_var(std::size_t j) const {
    return {1 + cfg_.grid.lower.size() + j};
  }

 private:
  struct CandidateTerms {
    double capacity;
    std::size_t lower_step;
    std::size_t higher_step;
    LoadMass mass;
  };

  PricingOption make_option(std::size_t k, std::span<const double> values) const;
  std::optional<std::size_t> most_violated_row(std::size_t k,
                                               const TariffSetting& setting) const;

  DiscreteDistribution dist_;
  ContractRules rules_;
  SolverConfig cfg_;
  StepFunction lower_steps_;   // breakpoints only; values unused
  StepFunction higher_steps_;
  CandidateSet candidates_;
  std::vector<CandidateTerms> terms_;
};

/// Free-function forms over a single time frame.
[[nodiscard]] lp::LinearProgram build_lp(const DiscreteDistribution& dist, std::size_t k,
                                         const ContractRules& rules, const SolverConfig& cfg,
                                         Objective objective,
                                         std::span<const lp::Constraint> extra = {});
[[nodiscard]] CandidateResult solve_candidate(const DiscreteDistribution& dist, std::size_t k,
                                              const ContractRules& rules,
                                              const SolverConfig& cfg);
[[nodiscard]] CandidateResult solve_candidate_lazy(const DiscreteDistribution& dist,
                                                   std::size_t k, const ContractRules& rules,
                                                   const SolverConfig& cfg);

struct Menu {
  int time_frame = 0;
  std::vector<PricingOption> options;  // sorted by capacity
  std::size_t candidates_total = 0;
  std::size_t infeasible_count = 0;
  /// Candidates whose LP broke down, with the solver's message.
  std::vector<std::string> failures;
  bool has_zero_option = false;

  [[nodiscard]] std::size_t nonzero_option_count() const;
};

/// Solves every candidate (lazily when cfg.lazy_mode) and keeps the feasible
/// ones.
[[nodiscard]] Menu menu(const DiscreteDistribution& dist, const ContractRules& rules,
                        const SolverConfig& cfg);

struct DeltaSweepPoint {
  double delta = 0.0;
  std::size_t nonzero_option_count = 0;
};

struct DeltaSweep {
  int time_frame = 0;
  std::vector<DeltaSweepPoint> points;
  /// Smallest grid delta with no nonzero-capacity option; nullopt when the
  /// grid never gets there.
  std::optional<double> delta_max;
};

/// Throws std::invalid_argument unless `delta_grid` is strictly increasing
/// and non-negative.
[[nodiscard]] DeltaSweep delta_max(const DiscreteDistribution& dist, const ContractRules& rules,
                                   const SolverConfig& cfg, std::span<const double> delta_grid);

/// Evenly spaced grid of `count` values over [first, last].
[[nodiscard]] std::vector<double> linear_grid(double first, double last, std::size_t count);

struct UtopiaReport {
  std::size_t candidate_index = 0;
  double capacity = 0.0;
  bool feasible = false;
  double revenue_opt = 0.0;    // revenue maximized alone
  double guarantee_opt = 0.0;  // guarantee maximized alone
  double lex_revenue = 0.0;
  double lex_guarantee = 0.0;
  double revenue_gap = 0.0;    // revenue_opt - lex_revenue
  double guarantee_gap = 0.0;  // guarantee_opt - lex_guarantee
  bool utopia_reached = false;
};

inline constexpr double kUtopiaTolerance = 1e-7;

/// Compares the lexicographic point against the individually optimal
/// objective values. Reports, never asserts.
[[nodiscard]] UtopiaReport utopia_check(const DiscreteDistribution& dist, std::size_t k,
                                        const ContractRules& rules, const SolverConfig& cfg);

}  // namespace tlou
