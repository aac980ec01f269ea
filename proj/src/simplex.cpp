#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "homp/solvers.hpp"

namespace homp {

namespace {

constexpr double kTol = 1e-9;

struct StandardForm {
  // min cost.x  s.t.  table.x = rhs, x >= 0.
  Eigen::MatrixXd table;
  Eigen::VectorXd rhs;
  Eigen::VectorXd cost;
  std::vector<double> row_sign;          // +-1 applied to reach rhs >= 0
  std::vector<int> pos_col, neg_col;     // split of the original free vars
  int num_rows = 0;
  int num_cols = 0;
};

StandardForm build_standard_form(const ConicProgram& p) {
  std::vector<bool> is_nonneg(p.num_vars, false);
  for (int j : p.nonneg) is_nonneg[j] = true;

  StandardForm sf;
  sf.pos_col.resize(p.num_vars);
  sf.neg_col.assign(p.num_vars, -1);
  int cols = 0;
  for (int j = 0; j < p.num_vars; ++j) {
    sf.pos_col[j] = cols++;
    if (!is_nonneg[j]) sf.neg_col[j] = cols++;
  }
  const int num_ineq = static_cast<int>(p.psd_blocks.size());
  const int slack0 = cols;
  cols += num_ineq;

  const int rows = static_cast<int>(p.equalities.size()) + num_ineq;
  sf.table = Eigen::MatrixXd::Zero(rows, cols);
  sf.rhs = Eigen::VectorXd::Zero(rows);
  sf.cost = Eigen::VectorXd::Zero(cols);
  sf.row_sign.assign(rows, 1.0);
  sf.num_rows = rows;
  sf.num_cols = cols;

  auto put = [&](int r, int var, double coef) {
    sf.table(r, sf.pos_col[var]) += coef;
    if (sf.neg_col[var] >= 0) sf.table(r, sf.neg_col[var]) -= coef;
  };

  int r = 0;
  for (const auto& row : p.equalities) {
    for (const auto& [var, coef] : row.coeffs) put(r, var, coef);
    sf.rhs[r] = row.rhs;
    ++r;
  }
  for (int k = 0; k < num_ineq; ++k) {
    const auto& blk = p.psd_blocks[k];
    if (blk.size != 1)
      throw std::invalid_argument("SimplexSolver: program has PSD blocks larger than 1x1");
    double constant = 0.0;
    for (const auto& c : blk.constants) constant += c.value;
    for (const auto& e : blk.entries) put(r, e.var, e.coef);
    sf.table(r, slack0 + k) = -1.0;  // expr - slack = -const
    sf.rhs[r] = -constant;
    ++r;
  }
  for (int i = 0; i < rows; ++i) {
    if (sf.rhs[i] < 0.0) {
      sf.table.row(i) *= -1.0;
      sf.rhs[i] *= -1.0;
      sf.row_sign[i] = -1.0;
    }
  }
  for (const auto& [var, coef] : p.objective) {
    sf.cost[sf.pos_col[var]] += coef;
    if (sf.neg_col[var] >= 0) sf.cost[sf.neg_col[var]] -= coef;
  }
  return sf;
}

// Tableau simplex with Bland's rule. Columns >= first_barred never
// enter the basis (used to lock phase-1 artificials out of phase 2).
enum class PivotResult { optimal, unbounded, iteration_cap };

PivotResult run_simplex(Eigen::MatrixXd& T, std::vector<int>& basis,
                        int first_barred) {
  const int m = static_cast<int>(T.rows()) - 1;
  const int n = static_cast<int>(T.cols()) - 1;
  for (long iter = 0; iter < 50000; ++iter) {
    int enter = -1;
    for (int j = 0; j < std::min(n, first_barred); ++j) {
      if (T(m, j) < -kTol) {
        enter = j;
        break;  // Bland: smallest index
      }
    }
    if (enter < 0) return PivotResult::optimal;
    int leave = -1;
    double best = 0.0;
    for (int i = 0; i < m; ++i) {
      if (T(i, enter) > kTol) {
        const double ratio = T(i, n) / T(i, enter);
        if (leave < 0 || ratio < best - kTol ||
            (ratio < best + kTol && basis[i] < basis[leave])) {
          leave = i;
          best = ratio;
        }
      }
    }
    if (leave < 0) return PivotResult::unbounded;
    T.row(leave) /= T(leave, enter);
    for (int i = 0; i <= m; ++i) {
      if (i == leave) continue;
      const double factor = T(i, enter);
      if (factor != 0.0) T.row(i) -= factor * T.row(leave);
    }
    basis[leave] = enter;
  }
  return PivotResult::iteration_cap;
}

}  // namespace

ConicSolution SimplexSolver::solve(const ConicProgram& program) {
  const auto t0 = std::chrono::steady_clock::now();
  StandardForm sf = build_standard_form(program);
  const int m = sf.num_rows;
  const int n = sf.num_cols;

  // Phase 1 tableau with one artificial per row.
  Eigen::MatrixXd T = Eigen::MatrixXd::Zero(m + 1, n + m + 1);
  T.block(0, 0, m, n) = sf.table;
  T.block(0, n, m, m) = Eigen::MatrixXd::Identity(m, m);
  T.block(0, n + m, m, 1) = sf.rhs;
  std::vector<int> basis(m);
  for (int i = 0; i < m; ++i) basis[i] = n + i;
  for (int i = 0; i < m; ++i) T.row(m) -= T.row(i);  // cost = sum artificials
  T(m, n + m) = -sf.rhs.sum();

  ConicSolution sol;
  auto finish = [&](SolveStatus st, const char* msg) {
    sol.status = st;
    sol.message = msg;
    sol.solve_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    return sol;
  };

  if (run_simplex(T, basis, n + m) != PivotResult::optimal)
    return finish(SolveStatus::inaccurate, "phase 1 stalled");
  if (-T(m, n + m) > 1e-7) return finish(SolveStatus::infeasible, "phase 1 positive");

  // Phase 2: swap in the real costs; artificials stay barred.
  T.row(m).setZero();
  for (int j = 0; j < n; ++j) T(m, j) = sf.cost[j];
  for (int i = 0; i < m; ++i) {
    if (T(m, basis[i]) != 0.0) T.row(m) -= T(m, basis[i]) * T.row(i);
  }
  const PivotResult r2 = run_simplex(T, basis, n);
  if (r2 == PivotResult::unbounded) return finish(SolveStatus::unbounded, "");
  if (r2 == PivotResult::iteration_cap)
    return finish(SolveStatus::inaccurate, "phase 2 stalled");

  Eigen::VectorXd x = Eigen::VectorXd::Zero(n + m);
  for (int i = 0; i < m; ++i) x[basis[i]] = T(i, n + m);
  sol.z = Eigen::VectorXd::Zero(program.num_vars);
  for (int j = 0; j < program.num_vars; ++j) {
    sol.z[j] = x[sf.pos_col[j]];
    if (sf.neg_col[j] >= 0) sol.z[j] -= x[sf.neg_col[j]];
  }
  sol.objective = 0.0;
  for (const auto& [var, coef] : program.objective)
    sol.objective += coef * sol.z[var];

  // Standard-form duals read off the artificial columns: the reduced
  // cost of artificial i is -y_std[i]. Convert to the adapter
  // convention y = -y_std and undo row sign flips.
  sol.eq_duals = Eigen::VectorXd::Zero(program.equalities.size());
  for (std::size_t rrow = 0; rrow < program.equalities.size(); ++rrow) {
    const double y_std = -T(m, n + static_cast<int>(rrow));
    sol.eq_duals[static_cast<Eigen::Index>(rrow)] =
        -y_std * sf.row_sign[rrow];
  }
  return finish(SolveStatus::optimal, "");
}

}  // namespace homp
