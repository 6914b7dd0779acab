#include "tlou/lp.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace tlou::lp {

LinearExpr& LinearExpr::add(VariableId var, double coef) {
  for (auto& t : terms_) {
    if (t.var == var) {
      t.coef += coef;
      return *this;
    }
  }
  terms_.push_back({var, coef});
  return *this;
}

LinearExpr& LinearExpr::operator+=(const LinearExpr& other) {
  for (const auto& t : other.terms_) add(t.var, t.coef);
  constant_ += other.constant_;
  return *this;
}

LinearExpr& LinearExpr::operator-=(const LinearExpr& other) {
  for (const auto& t : other.terms_) add(t.var, -t.coef);
  constant_ -= other.constant_;
  return *this;
}

double LinearExpr::evaluate(std::span<const double> values) const {
  double sum = constant_;
  for (const auto& t : terms_) sum += t.coef * values[t.var.index];
  return sum;
}

VariableId LinearProgram::add_variable(std::string name, double lower, double upper) {
  if (std::isnan(lower) || std::isnan(upper) || lower > upper) {
    throw std::invalid_argument("lp: invalid bounds for variable '" + name + "'");
  }
  if (lower == kInfinity || upper == -kInfinity) {
    throw std::invalid_argument("lp: variable '" + name + "' has an empty domain");
  }
  variables_.push_back({std::move(name), lower, upper});
  return VariableId{variables_.size() - 1};
}

void LinearProgram::check_expr(const LinearExpr& expr) const {
  for (const auto& t : expr.terms()) {
    if (t.var.index >= variables_.size()) {
      throw std::invalid_argument("lp: term references an undeclared variable");
    }
    if (!std::isfinite(t.coef)) throw std::invalid_argument("lp: non-finite coefficient");
  }
  if (!std::isfinite(expr.constant())) throw std::invalid_argument("lp: non-finite constant");
}

void LinearProgram::add_constraint(LinearExpr expr, Relation relation, double rhs,
                                   std::string name) {
  add_constraint(Constraint{std::move(expr), relation, rhs, std::move(name)});
}

void LinearProgram::add_constraint(Constraint c) {
  check_expr(c.expr);
  if (!std::isfinite(c.rhs)) throw std::invalid_argument("lp: non-finite right-hand side");
  if (c.name.empty()) c.name = "c" + std::to_string(constraints_.size());
  constraints_.push_back(std::move(c));
}

void LinearProgram::set_objective(Sense sense, LinearExpr objective) {
  check_expr(objective);
  sense_ = sense;
  objective_ = std::move(objective);
}

double LinearProgram::max_violation(std::span<const double> values) const {
  double worst = 0.0;
  for (std::size_t j = 0; j < variables_.size(); ++j) {
    worst = std::max({worst, variables_[j].lower - values[j], values[j] - variables_[j].upper});
  }
  for (const auto& c : constraints_) {
    const double lhs = c.expr.evaluate(values);
    switch (c.relation) {
      case Relation::less_equal: worst = std::max(worst, lhs - c.rhs); break;
      case Relation::greater_equal: worst = std::max(worst, c.rhs - lhs); break;
      case Relation::equal: worst = std::max(worst, std::abs(lhs - c.rhs)); break;
    }
  }
  return worst;
}

std::string LinearProgram::to_lp_text() const {
  std::ostringstream out;
  out.precision(17);
  auto write_expr = [&](const LinearExpr& e) {
    bool first = true;
    for (const auto& t : e.terms()) {
      if (t.coef == 0.0) continue;
      out << (t.coef < 0 ? " - " : (first ? " " : " + ")) << std::abs(t.coef) << ' '
          << variables_[t.var.index].name;
      first = false;
    }
    if (first) out << " 0 " << (variables_.empty() ? "x" : variables_.front().name);
  };
  out << (sense_ == Sense::maximize ? "Maximize\n" : "Minimize\n") << " obj:";
  write_expr(objective_);
  if (objective_.constant() != 0.0) out << " + " << objective_.constant() << " __const";
  out << "\nSubject To\n";
  for (const auto& c : constraints_) {
    out << ' ' << c.name << ':';
    write_expr(c.expr);
    switch (c.relation) {
      case Relation::less_equal: out << " <= "; break;
      case Relation::greater_equal: out << " >= "; break;
      case Relation::equal: out << " = "; break;
    }
    out << c.rhs - c.expr.constant() << '\n';
  }
  out << "Bounds\n";
  for (const auto& v : variables_) {
    if (v.lower == v.upper) {
      out << ' ' << v.name << " = " << v.lower << '\n';
      continue;
    }
    out << ' ';
    if (v.lower == -kInfinity) out << "-inf"; else out << v.lower;
    out << " <= " << v.name << " <= ";
    if (v.upper == kInfinity) out << "+inf"; else out << v.upper;
    out << '\n';
  }
  if (objective_.constant() != 0.0) out << " __const = 1\n";
  out << "End\n";
  return out.str();
}

const char* to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::optimal: return "optimal";
    case SolveStatus::infeasible: return "infeasible";
    case SolveStatus::unbounded: return "unbounded";
    case SolveStatus::solver_failure: return "solver_failure";
  }
  return "unknown";
}

namespace {

constexpr double kPivotTolerance = 1e-11;
constexpr double kReducedCostTolerance = 1e-10;

// Original variable x = offset + sum(sign * y[col]) over at most two columns.
struct ColumnMap {
  double offset = 0.0;
  std::vector<std::pair<std::size_t, double>> cols;
};

struct StandardRow {
  std::vector<double> coefs;  // over structural columns
  Relation relation;
  double rhs;
};

class Tableau {
 public:
  Tableau(std::size_t rows, std::size_t cols)
      : cols_(cols), data_(rows * (cols + 1), 0.0), basis_(rows) {}

  double& at(std::size_t r, std::size_t c) { return data_[r * (cols_ + 1) + c]; }
  double at(std::size_t r, std::size_t c) const { return data_[r * (cols_ + 1) + c]; }
  double& rhs(std::size_t r) { return at(r, cols_); }
  double rhs(std::size_t r) const { return at(r, cols_); }
  std::size_t rows() const { return basis_.size(); }
  std::size_t cols() const { return cols_; }
  std::vector<std::size_t>& basis() { return basis_; }
  const std::vector<std::size_t>& basis() const { return basis_; }

  void pivot(std::size_t pr, std::size_t pc) {
    const double p = at(pr, pc);
    for (std::size_t c = 0; c <= cols_; ++c) at(pr, c) /= p;
    at(pr, pc) = 1.0;
    for (std::size_t r = 0; r < rows(); ++r) {
      if (r == pr) continue;
      const double f = at(r, pc);
      if (f == 0.0) continue;
      for (std::size_t c = 0; c <= cols_; ++c) at(r, c) -= f * at(pr, c);
      at(r, pc) = 0.0;
    }
    basis_[pr] = pc;
  }

  void remove_row(std::size_t r) {
    const auto first = data_.begin() + static_cast<std::ptrdiff_t>(r * (cols_ + 1));
    data_.erase(first, first + static_cast<std::ptrdiff_t>(cols_ + 1));
    basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(r));
  }

 private:
  std::size_t cols_;
  std::vector<double> data_;
  std::vector<std::size_t> basis_;
};

enum class PhaseResult { optimal, unbounded, iteration_limit, numerical };

// Maximizes cost . y over columns flagged in `allowed`.
PhaseResult run_phase(Tableau& t, const std::vector<double>& cost,
                      const std::vector<bool>& allowed, std::size_t& iterations,
                      std::size_t limit) {
  const std::size_t m = t.rows();
  const std::size_t n = t.cols();
  std::vector<bool> is_basic(n, false);
  while (true) {
    std::fill(is_basic.begin(), is_basic.end(), false);
    for (std::size_t b : t.basis()) is_basic[b] = true;

    // Bland: first improving column.
    std::size_t entering = n;
    for (std::size_t j = 0; j < n && entering == n; ++j) {
      if (!allowed[j] || is_basic[j]) continue;
      double reduced = cost[j];
      for (std::size_t i = 0; i < m; ++i) reduced -= cost[t.basis()[i]] * t.at(i, j);
      if (!std::isfinite(reduced)) return PhaseResult::numerical;
      if (reduced > kReducedCostTolerance) entering = j;
    }
    if (entering == n) return PhaseResult::optimal;

    std::size_t leaving = m;
    double best_ratio = kInfinity;
    for (std::size_t i = 0; i < m; ++i) {
      const double a = t.at(i, entering);
      if (a <= kPivotTolerance) continue;
      const double ratio = std::max(0.0, t.rhs(i)) / a;
      if (ratio < best_ratio ||
          (ratio == best_ratio && leaving < m && t.basis()[i] < t.basis()[leaving])) {
        best_ratio = ratio;
        leaving = i;
      }
    }
    if (leaving == m) return PhaseResult::unbounded;
    if (++iterations > limit) return PhaseResult::iteration_limit;
    t.pivot(leaving, entering);
  }
}

}  // namespace

LpSolution solve(const LinearProgram& lp, const SolveOptions& options) {
  LpSolution out;
  const auto vars = lp.variables();

  // 1. Map each original variable onto non-negative structural columns.
  std::vector<ColumnMap> maps(vars.size());
  std::size_t n_struct = 0;
  std::vector<StandardRow> rows;
  std::vector<std::pair<std::size_t, double>> upper_rows;  // (column, bound)
  for (std::size_t j = 0; j < vars.size(); ++j) {
    const auto& v = vars[j];
    auto& map = maps[j];
    if (v.lower == v.upper) {
      map.offset = v.lower;
    } else if (v.lower > -kInfinity) {
      map.offset = v.lower;
      map.cols.emplace_back(n_struct, 1.0);
      if (v.upper < kInfinity) upper_rows.emplace_back(n_struct, v.upper - v.lower);
      ++n_struct;
    } else if (v.upper < kInfinity) {
      map.offset = v.upper;
      map.cols.emplace_back(n_struct++, -1.0);
    } else {
      map.cols.emplace_back(n_struct++, 1.0);
      map.cols.emplace_back(n_struct++, -1.0);
    }
  }

  for (const auto& c : lp.constraints()) {
    StandardRow row{std::vector<double>(n_struct, 0.0), c.relation, c.rhs - c.expr.constant()};
    for (const auto& term : c.expr.terms()) {
      const auto& map = maps[term.var.index];
      row.rhs -= term.coef * map.offset;
      for (const auto& [col, sign] : map.cols) row.coefs[col] += term.coef * sign;
    }
    rows.push_back(std::move(row));
  }
  for (const auto& [col, bound] : upper_rows) {
    StandardRow row{std::vector<double>(n_struct, 0.0), Relation::less_equal, bound};
    row.coefs[col] = 1.0;
    rows.push_back(std::move(row));
  }
  for (auto& row : rows) {
    if (row.rhs < 0.0) {
      for (auto& a : row.coefs) a = -a;
      row.rhs = -row.rhs;
      if (row.relation == Relation::less_equal) {
        row.relation = Relation::greater_equal;
      } else if (row.relation == Relation::greater_equal) {
        row.relation = Relation::less_equal;
      }
    }
  }

  // 2. Tableau layout: structural | slack/surplus | artificial.
  std::size_t n_slack = 0;
  std::size_t n_art = 0;
  for (const auto& row : rows) {
    if (row.relation != Relation::equal) ++n_slack;
    if (row.relation != Relation::less_equal) ++n_art;
  }
  const std::size_t art_begin = n_struct + n_slack;
  const std::size_t n_cols = art_begin + n_art;
  Tableau t(rows.size(), n_cols);
  {
    std::size_t slack = n_struct;
    std::size_t art = art_begin;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const auto& row = rows[i];
      for (std::size_t j = 0; j < n_struct; ++j) t.at(i, j) = row.coefs[j];
      t.rhs(i) = row.rhs;
      switch (row.relation) {
        case Relation::less_equal:
          t.at(i, slack) = 1.0;
          t.basis()[i] = slack++;
          break;
        case Relation::greater_equal:
          t.at(i, slack++) = -1.0;
          t.at(i, art) = 1.0;
          t.basis()[i] = art++;
          break;
        case Relation::equal:
          t.at(i, art) = 1.0;
          t.basis()[i] = art++;
          break;
      }
    }
  }

  const std::size_t limit = options.iteration_limit > 0
                                ? options.iteration_limit
                                : 1000 + 50 * (rows.size() + n_cols);
  double rhs_scale = 1.0;
  for (const auto& row : rows) rhs_scale = std::max(rhs_scale, std::abs(row.rhs));

  auto fail = [&](SolveStatus status, std::string message) {
    out.status = status;
    out.message = std::move(message);
    return out;
  };

  // 3. Phase 1: drive the artificials to zero.
  if (n_art > 0) {
    std::vector<double> cost(n_cols, 0.0);
    for (std::size_t j = art_begin; j < n_cols; ++j) cost[j] = -1.0;
    const std::vector<bool> allowed(n_cols, true);
    const auto res = run_phase(t, cost, allowed, out.iterations, limit);
    if (res == PhaseResult::iteration_limit) {
      return fail(SolveStatus::solver_failure, "iteration limit in phase 1");
    }
    if (res != PhaseResult::optimal) {
      return fail(SolveStatus::solver_failure, "numerical breakdown in phase 1");
    }
    double infeasibility = 0.0;
    for (std::size_t i = 0; i < t.rows(); ++i) {
      if (t.basis()[i] >= art_begin) infeasibility += t.rhs(i);
    }
    if (infeasibility > options.feasibility_tolerance * rhs_scale) {
      return fail(SolveStatus::infeasible, "phase 1 optimum is positive");
    }
    // Pivot zero-valued artificials out of the basis; drop redundant rows.
    for (std::size_t i = t.rows(); i-- > 0;) {
      if (t.basis()[i] < art_begin) continue;
      std::size_t col = art_begin;
      for (std::size_t j = 0; j < art_begin; ++j) {
        if (std::abs(t.at(i, j)) > 1e-9) {
          col = j;
          break;
        }
      }
      if (col < art_begin) {
        t.pivot(i, col);
      } else {
        t.remove_row(i);
      }
    }
  }

  // 4. Phase 2 on the real objective, artificials barred from entering.
  std::vector<double> cost(n_cols, 0.0);
  const double sense = lp.sense() == Sense::maximize ? 1.0 : -1.0;
  for (const auto& term : lp.objective().terms()) {
    for (const auto& [col, sign] : maps[term.var.index].cols) {
      cost[col] += sense * term.coef * sign;
    }
  }
  std::vector<bool> allowed(n_cols, true);
  for (std::size_t j = art_begin; j < n_cols; ++j) allowed[j] = false;
  const auto res = run_phase(t, cost, allowed, out.iterations, limit);
  if (res == PhaseResult::unbounded) return fail(SolveStatus::unbounded, "objective is unbounded");
  if (res == PhaseResult::iteration_limit) {
    return fail(SolveStatus::solver_failure, "iteration limit in phase 2");
  }
  if (res == PhaseResult::numerical) {
    return fail(SolveStatus::solver_failure, "numerical breakdown in phase 2");
  }

  // 5. Recover the original variables and check them against the input rows.
  std::vector<double> y(n_cols, 0.0);
  for (std::size_t i = 0; i < t.rows(); ++i) y[t.basis()[i]] = std::max(0.0, t.rhs(i));
  std::vector<double> x(vars.size(), 0.0);
  for (std::size_t j = 0; j < vars.size(); ++j) {
    x[j] = maps[j].offset;
    for (const auto& [col, sign] : maps[j].cols) x[j] += sign * y[col];
    // Snap to bounds the simplex reached up to round-off.
    x[j] = std::clamp(x[j], vars[j].lower, vars[j].upper);
    if (!std::isfinite(x[j])) return fail(SolveStatus::solver_failure, "non-finite solution");
  }
  const double violation = lp.max_violation(x);
  if (violation > options.feasibility_tolerance) {
    return fail(SolveStatus::solver_failure,
                "solution violates a constraint by " + std::to_string(violation));
  }
  out.status = SolveStatus::optimal;
  out.objective_value = lp.objective().evaluate(x);
  out.values = std::move(x);
  return out;
}

}  // namespace tlou::lp
