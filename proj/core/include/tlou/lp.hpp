#pragma once

#include <cstddef>
#include <limits>
#include <span>
#include <string>
#include <vector>

namespace tlou::lp {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

struct VariableId {
  std::size_t index = 0;
  friend bool operator==(VariableId, VariableId) = default;
};

struct Term {
  VariableId var;
  double coef = 0.0;
};

/// sum(coef * var) + constant
class LinearExpr {
 public:
  LinearExpr() = default;
  explicit LinearExpr(double constant) : constant_(constant) {}

  LinearExpr& add(VariableId var, double coef);
  LinearExpr& add_constant(double value) {
    constant_ += value;
    return *this;
  }
  LinearExpr& operator+=(const LinearExpr& other);
  LinearExpr& operator-=(const LinearExpr& other);

  [[nodiscard]] std::span<const Term> terms() const { return terms_; }
  [[nodiscard]] double constant() const { return constant_; }
  [[nodiscard]] double evaluate(std::span<const double> values) const;

 private:
  std::vector<Term> terms_;
  double constant_ = 0.0;
};

enum class Relation { less_equal, greater_equal, equal };
enum class Sense { maximize, minimize };

struct Variable {
  std::string name;
  double lower = 0.0;
  double upper = kInfinity;
};

struct Constraint {
  LinearExpr expr;
  Relation relation = Relation::less_equal;
  double rhs = 0.0;
  std::string name;
};

/// Small dense linear program.
class LinearProgram {
 public:
  VariableId add_variable(std::string name, double lower = 0.0, double upper = kInfinity);
  void add_constraint(LinearExpr expr, Relation relation, double rhs, std::string name = {});
  void add_constraint(Constraint c);
  void set_objective(Sense sense, LinearExpr objective);

  [[nodiscard]] std::span<const Variable> variables() const { return variables_; }
  [[nodiscard]] std::span<const Constraint> constraints() const { return constraints_; }
  [[nodiscard]] const LinearExpr& objective() const { return objective_; }
  [[nodiscard]] Sense sense() const { return sense_; }
  [[nodiscard]] std::size_t num_variables() const { return variables_.size(); }
  [[nodiscard]] std::size_t num_constraints() const { return constraints_.size(); }

  /// Largest violation of any bound or constraint at `values` (0 when feasible).
  [[nodiscard]] double max_violation(std::span<const double> values) const;

  /// CPLEX LP text format, for cross-checking with an external solver.
  [[nodiscard]] std::string to_lp_text() const;

 private:
  void check_expr(const LinearExpr& expr) const;

  std::vector<Variable> variables_;
  std::vector<Constraint> constraints_;
  LinearExpr objective_;
  Sense sense_ = Sense::maximize;
};

enum class SolveStatus { optimal, infeasible, unbounded, solver_failure };

[[nodiscard]] const char* to_string(SolveStatus status);

struct LpSolution {
  SolveStatus status = SolveStatus::solver_failure;
  std::vector<double> values;  // indexed by VariableId::index, empty unless optimal
  double objective_value = 0.0;
  std::size_t iterations = 0;
  std::string message;

  [[nodiscard]] bool optimal() const { return status == SolveStatus::optimal; }
  [[nodiscard]] double value(VariableId v) const { return values.at(v.index); }
};

struct SolveOptions {
  /// Feasibility tolerance of reported optima against the original rows.
  double feasibility_tolerance = 1e-9;
  /// 0 picks a cap from the problem size.
  std::size_t iteration_limit = 0;
};

/// Two-phase primal simplex on a dense tableau with Bland's rule, so the
/// pivot sequence and the returned vertex are deterministic.
[[nodiscard]] LpSolution solve(const LinearProgram& lp, const SolveOptions& options = {});

}  // namespace tlou::lp
