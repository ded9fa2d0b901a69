#include "rspa/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace rspa {

namespace {

constexpr double kPivotTol = 1e-9;
constexpr double kCostTol = 1e-9;
constexpr double kFeasTol = 1e-7;
constexpr int kDegenerateStreakLimit = 40;

// Dense tableau with an appended cost row and rhs column. Column layout:
// [0, nv) structural, then slack/surplus columns, then artificials.
// Artificial columns stay in the tableau through phase 2, pinned out of the
// eligible set, so the final reduced-cost row still prices them: the dual of
// row i is read off the column that is +e_i in that row (reduced cost -y_i).
class Tableau {
 public:
  explicit Tableau(const LpProblem& p)
      : nv_(p.num_vars), m_(static_cast<int>(p.rows.size())), original_m_(m_) {
    flips_.assign(m_, 1.0);
    std::vector<LpProblem::Rel> rels = p.rels;
    int aux_count = 0;
    int artificial_count = 0;
    for (int i = 0; i < m_; ++i) {
      if (p.rhs[i] < 0.0) {
        flips_[i] = -1.0;
        if (rels[i] == LpProblem::Rel::less_eq) {
          rels[i] = LpProblem::Rel::greater_eq;
        } else if (rels[i] == LpProblem::Rel::greater_eq) {
          rels[i] = LpProblem::Rel::less_eq;
        }
      }
      if (rels[i] == LpProblem::Rel::less_eq) {
        ++aux_count;
      } else if (rels[i] == LpProblem::Rel::greater_eq) {
        ++aux_count;
        ++artificial_count;
      } else {
        ++artificial_count;
      }
    }
    cols_ = nv_ + aux_count + artificial_count;
    width_ = cols_ + 1;
    tab_.assign(static_cast<std::size_t>(m_ + 1) * width_, 0.0);
    basis_.assign(m_, -1);
    row_dual_col_.assign(m_, -1);
    row_id_.resize(m_);
    artificial_.assign(cols_, false);

    int next_aux = nv_;
    for (int i = 0; i < m_; ++i) {
      row_id_[i] = i;
      double* row = row_ptr(i);
      for (int j = 0; j < nv_; ++j) row[j] = flips_[i] * p.rows[i][j];
      row[cols_] = flips_[i] * p.rhs[i];
      if (rels[i] == LpProblem::Rel::less_eq) {
        row[next_aux] = 1.0;
        basis_[i] = next_aux;
        row_dual_col_[i] = next_aux;
        ++next_aux;
      } else if (rels[i] == LpProblem::Rel::greater_eq) {
        row[next_aux] = -1.0;  // surplus
        ++next_aux;
      }
    }
    for (int i = 0; i < m_; ++i) {
      if (basis_[i] >= 0) continue;
      row_ptr(i)[next_aux] = 1.0;
      artificial_[next_aux] = true;
      basis_[i] = next_aux;
      row_dual_col_[i] = next_aux;
      ++next_aux;
    }
  }

  // Phase 1: minimize the sum of artificial variables.
  LpStatus phase1(int max_iterations, int& iterations) {
    double* cost = row_ptr(m_);
    std::fill(cost, cost + width_, 0.0);
    for (int j = 0; j < cols_; ++j) {
      if (artificial_[j]) cost[j] = 1.0;
    }
    for (int i = 0; i < m_; ++i) {
      if (artificial_[basis_[i]]) subtract_row(m_, i, 1.0);
    }
    const LpStatus status = iterate(max_iterations, iterations, /*phase1=*/true);
    if (status != LpStatus::optimal) return status;
    if (objective_value() > kFeasTol) return LpStatus::infeasible;
    purge_artificial_basis();
    return LpStatus::optimal;
  }

  LpStatus phase2(const std::vector<double>& objective, int max_iterations, int& iterations) {
    double* cost = row_ptr(m_);
    std::fill(cost, cost + width_, 0.0);
    for (int j = 0; j < nv_; ++j) cost[j] = objective[j];
    for (int i = 0; i < m_; ++i) {
      const double cb = basis_[i] < nv_ ? objective[basis_[i]] : 0.0;
      if (cb != 0.0) subtract_row(m_, i, cb);
    }
    return iterate(max_iterations, iterations, /*phase1=*/false);
  }

  std::vector<double> primal() const {
    std::vector<double> x(nv_, 0.0);
    for (int i = 0; i < m_; ++i) {
      if (basis_[i] < nv_) x[basis_[i]] = rhs(i);
    }
    return x;
  }

  // Multipliers per original row; rows dropped as redundant report 0.
  std::vector<double> duals() const {
    const double* cost = row_ptr(m_);
    std::vector<double> y(original_m_, 0.0);
    for (int i = 0; i < m_; ++i) {
      y[row_id_[i]] = -cost[row_dual_col_[i]] * flips_[i];
    }
    return y;
  }

  double objective_value() const { return -row_ptr(m_)[cols_]; }

 private:
  double* row_ptr(int i) { return tab_.data() + static_cast<std::size_t>(i) * width_; }
  const double* row_ptr(int i) const {
    return tab_.data() + static_cast<std::size_t>(i) * width_;
  }
  double rhs(int i) const { return row_ptr(i)[cols_]; }

  void subtract_row(int target, int source, double factor) {
    double* t = row_ptr(target);
    const double* s = row_ptr(source);
    for (int j = 0; j < width_; ++j) t[j] -= factor * s[j];
  }

  void pivot(int pr, int pc) {
    double* prow = row_ptr(pr);
    const double inv = 1.0 / prow[pc];
    for (int j = 0; j < width_; ++j) prow[j] *= inv;
    prow[pc] = 1.0;
    for (int i = 0; i <= m_; ++i) {
      if (i == pr) continue;
      double* row = row_ptr(i);
      const double factor = row[pc];
      if (factor == 0.0) continue;
      for (int j = 0; j < width_; ++j) row[j] -= factor * prow[j];
      row[pc] = 0.0;
    }
    basis_[pr] = pc;
  }

  int choose_entering(bool bland, bool phase1) const {
    const double* cost = row_ptr(m_);
    int best = -1;
    double best_cost = -kCostTol;
    for (int j = 0; j < cols_; ++j) {
      if (!phase1 && artificial_[j]) continue;
      if (cost[j] < best_cost) {
        if (bland) return j;
        best_cost = cost[j];
        best = j;
      }
    }
    return best;
  }

  // Ratio test. Ties go to the largest pivot magnitude in normal mode (fewer
  // degenerate stalls, better conditioning) and to the smallest basis index
  // in Bland mode (the anti-cycling guarantee).
  int choose_leaving(int entering, bool bland) const {
    int leave = -1;
    double best_ratio = std::numeric_limits<double>::infinity();
    double best_pivot = 0.0;
    for (int i = 0; i < m_; ++i) {
      const double a = row_ptr(i)[entering];
      if (a <= kPivotTol) continue;
      const double ratio = rhs(i) / a;
      if (ratio < best_ratio - 1e-12) {
        best_ratio = ratio;
        best_pivot = a;
        leave = i;
      } else if (ratio < best_ratio + 1e-12 && leave >= 0) {
        if (bland ? basis_[i] < basis_[leave] : a > best_pivot) {
          best_ratio = std::min(best_ratio, ratio);
          best_pivot = a;
          leave = i;
        }
      }
    }
    return leave;
  }

  // Dantzig pricing, falling back to Bland's rule after a run of degenerate
  // pivots and returning to Dantzig on the first strict improvement. Any
  // non-terminating path would make no progress from some point on, so it
  // would stay in Bland mode, where cycling is impossible.
  LpStatus iterate(int max_iterations, int& iterations, bool phase1) {
    bool bland = false;
    int degenerate_streak = 0;
    while (true) {
      const int entering = choose_entering(bland, phase1);
      if (entering < 0) return LpStatus::optimal;
      const int leaving = choose_leaving(entering, bland);
      if (leaving < 0) return LpStatus::unbounded;
      if (++iterations > max_iterations) return LpStatus::iteration_limit;
      const double step = rhs(leaving) / row_ptr(leaving)[entering];
      pivot(leaving, entering);
      if (step <= 1e-12) {
        if (++degenerate_streak >= kDegenerateStreakLimit) bland = true;
      } else {
        degenerate_streak = 0;
        bland = false;
      }
    }
  }

  // After phase 1, swap basic artificials out; a row where no structural
  // pivot exists is linearly dependent and is removed from the tableau.
  void purge_artificial_basis() {
    for (int i = m_ - 1; i >= 0; --i) {
      if (!artificial_[basis_[i]]) continue;
      const double* row = row_ptr(i);
      int pc = -1;
      for (int j = 0; j < cols_; ++j) {
        if (!artificial_[j] && std::abs(row[j]) > kPivotTol) {
          pc = j;
          break;
        }
      }
      if (pc >= 0) {
        pivot(i, pc);
      } else {
        drop_row(i);
      }
    }
  }

  void drop_row(int i) {
    const int last = m_ - 1;
    if (i != last) {
      double* a = row_ptr(i);
      double* b = row_ptr(last);
      std::swap_ranges(a, a + width_, b);
      std::swap(basis_[i], basis_[last]);
      std::swap(row_dual_col_[i], row_dual_col_[last]);
      std::swap(flips_[i], flips_[last]);
      std::swap(row_id_[i], row_id_[last]);
    }
    double* freed = row_ptr(last);
    const double* cost = row_ptr(m_);
    std::copy(cost, cost + width_, freed);
    --m_;
  }

  int nv_;
  int m_;
  int original_m_;
  int cols_ = 0;
  int width_ = 0;
  std::vector<double> tab_;
  std::vector<int> basis_;
  std::vector<int> row_dual_col_;
  std::vector<int> row_id_;
  std::vector<double> flips_;
  std::vector<bool> artificial_;
};

}  // namespace

const char* lp_status_name(LpStatus status) {
  switch (status) {
    case LpStatus::optimal: return "optimal";
    case LpStatus::infeasible: return "infeasible";
    case LpStatus::unbounded: return "unbounded";
    case LpStatus::iteration_limit: return "iteration_limit";
  }
  return "unknown";
}

void LpProblem::add_row(std::vector<double> coeffs, Rel rel, double b) {
  rows.push_back(std::move(coeffs));
  rels.push_back(rel);
  rhs.push_back(b);
}

LpResult lp_solve(const LpProblem& problem, int max_iterations) {
  if (problem.num_vars <= 0 ||
      problem.objective.size() != static_cast<std::size_t>(problem.num_vars)) {
    throw std::invalid_argument("lp_solve: malformed objective");
  }
  for (const auto& row : problem.rows) {
    if (row.size() != static_cast<std::size_t>(problem.num_vars)) {
      throw std::invalid_argument("lp_solve: malformed row");
    }
  }

  LpResult result;
  Tableau tableau(problem);
  LpStatus status = tableau.phase1(max_iterations, result.iterations);
  if (status != LpStatus::optimal) {
    result.status = status == LpStatus::unbounded ? LpStatus::infeasible : status;
    return result;
  }
  status = tableau.phase2(problem.objective, max_iterations, result.iterations);
  result.status = status;
  if (status != LpStatus::optimal) return result;

  result.x = tableau.primal();
  result.duals = tableau.duals();
  double obj = 0.0;
  for (int j = 0; j < problem.num_vars; ++j) obj += problem.objective[j] * result.x[j];
  result.objective = obj;
  return result;
}

}  // namespace rspa
