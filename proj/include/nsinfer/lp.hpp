#pragma once

#include <cstdint>
#include <vector>

#include "nsinfer/dataset.hpp"

namespace nsinfer {

// Linear program in canonical form:
//   minimize    c' x
//   subject to  A x <= b,  x >= 0.
struct LpProblem {
  Vector c;
  Matrix a;
  Vector b;
};

enum class LpStatus { optimal, infeasible, unbounded, breakdown };

const char* lp_status_name(LpStatus status);

struct SimplexOptions {
  double feas_tol = 1e-8;
  double pivot_tol = 1e-11;
  bool bland_only = false;
  int max_iters = 0;  // 0 picks a dimension-based default
};

struct LpSolution {
  Vector x;
  double objective = 0.0;
  LpStatus status = LpStatus::breakdown;
  double max_violation = 0.0;
  // basis[i] is the variable index basic in row i: structural variables are
  // 0..n-1, slacks n..n+m-1, or -1 for a row left covered by an artificial
  // at level zero (redundant constraint).
  std::vector<int> basis;
  int iterations = 0;
};

LpSolution solve_lp(const LpProblem& problem, const SimplexOptions& options = {});

struct LpCheck {
  double primal_violation = 0.0;   // max of A x - b and -x overshoots
  double objective_gap = 0.0;      // |c'x - reported objective|
  bool basis_consistent = true;    // basic columns reproduce x via LU solve
};

LpCheck check_solution(const LpProblem& problem, const LpSolution& solution);

// Dual vector y >= 0 for the rows, recovered from the final basis.
Vector dual_from_basis(const LpProblem& problem, const LpSolution& solution);

}  // namespace nsinfer
