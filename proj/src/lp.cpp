#include "nsinfer/lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace nsinfer {

namespace {

constexpr double kCostTol = 1e-9;
constexpr int kBlandTrigger = 64;

// Dense two-phase primal simplex on an explicit tableau.
//
// Column layout: [structural 0..n) | slacks n..n+m) | artificials | rhs].
// Row layout: m constraint rows, then the phase-2 cost row, then the
// phase-1 cost row.  Rows with negative rhs are negated so every initial
// basic value is nonnegative; those rows carry the artificials.
class Simplex {
 public:
  Simplex(const LpProblem& problem, const SimplexOptions& options)
      : m_(static_cast<int>(problem.a.rows())),
        n_(static_cast<int>(problem.a.cols())),
        opt_(options) {
    int na = 0;
    for (int i = 0; i < m_; ++i)
      if (problem.b(i) < 0.0) ++na;
    ncols_ = n_ + m_ + na;
    rhs_ = ncols_;
    t_ = Matrix::Zero(m_ + 2, ncols_ + 1);
    basis_.assign(m_, 0);

    int art = n_ + m_;
    for (int i = 0; i < m_; ++i) {
      if (problem.b(i) >= 0.0) {
        t_.row(i).head(n_) = problem.a.row(i);
        t_(i, n_ + i) = 1.0;
        t_(i, rhs_) = problem.b(i);
        basis_[i] = n_ + i;
      } else {
        t_.row(i).head(n_) = -problem.a.row(i);
        t_(i, n_ + i) = -1.0;
        t_(i, art) = 1.0;
        t_(i, rhs_) = -problem.b(i);
        basis_[i] = art++;
      }
    }
    t_.row(m_).head(n_) = problem.c.transpose();
    for (int j = n_ + m_; j < ncols_; ++j) t_(m_ + 1, j) = 1.0;
    for (int i = 0; i < m_; ++i)
      if (basis_[i] >= n_ + m_) t_.row(m_ + 1) -= t_.row(i);

    if (opt_.max_iters > 0)
      max_iters_ = opt_.max_iters;
    else
      max_iters_ = 200 + 50 * (m_ + ncols_);
    bland_ = opt_.bland_only;
  }

  LpSolution run(const LpProblem& problem) {
    LpSolution sol;
    LpStatus phase1 = phase(m_ + 1);
    if (phase1 == LpStatus::breakdown) return finish(problem, LpStatus::breakdown);
    double infeas = -t_(m_ + 1, rhs_);
    if (infeas > opt_.feas_tol) return finish(problem, LpStatus::infeasible);
    expel_artificials();
    for (int i = 0; i < m_; ++i) {
      double& v = t_(i, rhs_);
      if (v < 0.0 && v > -opt_.feas_tol) v = 0.0;
    }
    LpStatus phase2 = phase(m_);
    if (phase2 == LpStatus::breakdown) return finish(problem, LpStatus::breakdown);
    if (phase2 == LpStatus::unbounded) return finish(problem, LpStatus::unbounded);
    return finish(problem, LpStatus::optimal);
  }

 private:
  // One simplex phase minimizing the given cost row.  Returns optimal when no
  // negative reduced cost remains, unbounded when an improving column has no
  // blocking row, breakdown when the pivot budget runs out.
  LpStatus phase(int crow) {
    int streak = 0;
    while (true) {
      if (iterations_ >= max_iters_) return LpStatus::breakdown;
      int enter = pick_entering(crow);
      if (enter < 0) return LpStatus::optimal;
      int leave = pick_leaving(enter);
      if (leave < 0) return crow == m_ ? LpStatus::unbounded : LpStatus::breakdown;
      bool degenerate = t_(leave, rhs_) <= opt_.feas_tol;
      pivot(leave, enter);
      ++iterations_;
      streak = degenerate ? streak + 1 : 0;
      if (streak > kBlandTrigger) bland_ = true;
    }
  }

  // Dantzig pricing by default; Bland once a long degenerate streak suggests
  // cycling.  Artificial columns never re-enter.
  int pick_entering(int crow) const {
    int best = -1;
    double best_cost = -kCostTol;
    for (int j = 0; j < n_ + m_; ++j) {
      double cj = t_(crow, j);
      if (cj < best_cost) {
        if (bland_) return j;
        best_cost = cj;
        best = j;
      }
    }
    return best;
  }

  int pick_leaving(int enter) const {
    int best = -1;
    double best_ratio = std::numeric_limits<double>::infinity();
    for (int i = 0; i < m_; ++i) {
      if (basis_[i] < 0) continue;
      double piv = t_(i, enter);
      if (piv <= opt_.pivot_tol) continue;
      double ratio = t_(i, rhs_) / piv;
      if (ratio < best_ratio - 1e-12 ||
          (ratio < best_ratio + 1e-12 && (best < 0 || basis_[i] < basis_[best]))) {
        best_ratio = ratio;
        best = i;
      }
    }
    return best;
  }

  void pivot(int row, int col) {
    t_.row(row) /= t_(row, col);
    Vector factor = t_.col(col);
    factor(row) = 0.0;
    t_.noalias() -= factor * t_.row(row);
    t_.col(col).setZero();
    t_(row, col) = 1.0;
    basis_[row] = col;
  }

  // After phase 1 any artificial still basic sits at level zero.  Swap it for
  // a structural or slack column when one is available; otherwise the row is
  // redundant and drops out of further pivoting.
  void expel_artificials() {
    for (int i = 0; i < m_; ++i) {
      if (basis_[i] < n_ + m_) continue;
      int col = -1;
      for (int j = 0; j < n_ + m_; ++j) {
        if (std::abs(t_(i, j)) > opt_.pivot_tol) {
          col = j;
          break;
        }
      }
      if (col >= 0) {
        pivot(i, col);
      } else {
        basis_[i] = -1;
        t_.row(i).setZero();
      }
    }
  }

  LpSolution finish(const LpProblem& problem, LpStatus status) {
    LpSolution sol;
    sol.status = status;
    sol.basis = basis_;
    sol.iterations = iterations_;
    sol.x = Vector::Zero(n_);
    if (status == LpStatus::optimal || status == LpStatus::unbounded) {
      for (int i = 0; i < m_; ++i)
        if (basis_[i] >= 0 && basis_[i] < n_) sol.x(basis_[i]) = t_(i, rhs_);
      sol.x = sol.x.cwiseMax(0.0);
      sol.objective = problem.c.dot(sol.x);
      Vector resid = problem.a * sol.x - problem.b;
      sol.max_violation = std::max(0.0, resid.maxCoeff());
    }
    return sol;
  }

  int m_, n_, ncols_, rhs_;
  SimplexOptions opt_;
  Matrix t_;
  std::vector<int> basis_;
  int iterations_ = 0;
  int max_iters_ = 0;
  bool bland_ = false;
};

}  // namespace

const char* lp_status_name(LpStatus status) {
  switch (status) {
    case LpStatus::optimal: return "optimal";
    case LpStatus::infeasible: return "infeasible";
    case LpStatus::unbounded: return "unbounded";
    case LpStatus::breakdown: return "breakdown";
  }
  return "unknown";
}

LpSolution solve_lp(const LpProblem& problem, const SimplexOptions& options) {
  LpSolution bad;
  if (problem.a.rows() != problem.b.size() || problem.a.cols() != problem.c.size() ||
      problem.a.rows() == 0 || problem.a.cols() == 0) {
    bad.status = LpStatus::breakdown;
    return bad;
  }
  if (!problem.a.allFinite() || !problem.b.allFinite() || !problem.c.allFinite()) {
    bad.status = LpStatus::breakdown;
    return bad;
  }
  Simplex simplex(problem, options);
  return simplex.run(problem);
}

LpCheck check_solution(const LpProblem& problem, const LpSolution& solution) {
  LpCheck chk;
  const int m = static_cast<int>(problem.a.rows());
  const int n = static_cast<int>(problem.a.cols());
  if (solution.x.size() != n) {
    chk.basis_consistent = false;
    return chk;
  }
  Vector resid = problem.a * solution.x - problem.b;
  chk.primal_violation = std::max(0.0, resid.maxCoeff());
  if (solution.x.size() > 0)
    chk.primal_violation = std::max(chk.primal_violation, -solution.x.minCoeff());
  chk.objective_gap = std::abs(problem.c.dot(solution.x) - solution.objective);

  if (static_cast<int>(solution.basis.size()) != m) {
    chk.basis_consistent = false;
    return chk;
  }
  std::vector<int> cols;
  for (int idx : solution.basis)
    if (idx >= 0) cols.push_back(idx);
  if (cols.empty()) {
    chk.basis_consistent = solution.x.lpNorm<Eigen::Infinity>() <= 1e-8;
    return chk;
  }
  Matrix basis_mat = Matrix::Zero(m, static_cast<int>(cols.size()));
  for (std::size_t k = 0; k < cols.size(); ++k) {
    if (cols[k] < n)
      basis_mat.col(static_cast<int>(k)) = problem.a.col(cols[k]);
    else
      basis_mat(cols[k] - n, static_cast<int>(k)) = 1.0;
  }
  Vector z = basis_mat.colPivHouseholderQr().solve(problem.b);
  double fit = (basis_mat * z - problem.b).lpNorm<Eigen::Infinity>();
  Vector x_check = Vector::Zero(n);
  for (std::size_t k = 0; k < cols.size(); ++k)
    if (cols[k] < n) x_check(cols[k]) += z(static_cast<int>(k));
  double gap = (x_check - solution.x).lpNorm<Eigen::Infinity>();
  double scale = 1.0 + problem.b.lpNorm<Eigen::Infinity>();
  chk.basis_consistent = fit <= 1e-6 * scale && gap <= 1e-6 * scale;
  return chk;
}

Vector dual_from_basis(const LpProblem& problem, const LpSolution& solution) {
  const int m = static_cast<int>(problem.a.rows());
  const int n = static_cast<int>(problem.a.cols());
  std::vector<int> rows;
  for (int i = 0; i < m; ++i)
    if (i < static_cast<int>(solution.basis.size()) && solution.basis[i] >= 0)
      rows.push_back(i);
  if (rows.empty()) return Vector::Zero(m);
  Matrix bt(static_cast<int>(rows.size()), m);
  Vector cb(static_cast<int>(rows.size()));
  for (std::size_t k = 0; k < rows.size(); ++k) {
    int idx = solution.basis[rows[k]];
    if (idx < n) {
      bt.row(static_cast<int>(k)) = problem.a.col(idx).transpose();
      cb(static_cast<int>(k)) = problem.c(idx);
    } else {
      bt.row(static_cast<int>(k)).setZero();
      bt(static_cast<int>(k), idx - n) = 1.0;
      cb(static_cast<int>(k)) = 0.0;
    }
  }
  Vector y = bt.colPivHouseholderQr().solve(cb);
  return -y;
}

}  // namespace nsinfer
