#pragma once

#include "exactcuts/problem.hpp"
#include "exactcuts/rational.hpp"

#include <optional>
#include <vector>

namespace exactcuts {

// a x <= rhs
struct LpRow {
  SparseVec coefficients;
  Rational rhs;
};

struct LpRelaxation {
  std::vector<Bound> lower;
  std::vector<Bound> upper;
  std::vector<LpRow> rows;
  SparseVec objective;  // minimised

  int num_vars() const { return static_cast<int>(lower.size()); }
  int num_rows() const { return static_cast<int>(rows.size()); }
};

LpRelaxation lp_from_problem(const Problem& p);

enum class LpStatus { optimal, infeasible, unbounded, iteration_limit };
const char* to_string(LpStatus s);

// Column ids: structural j in [0, n), slack of row k is n + k.
//
// At optimality: c = y^T A + d with y <= 0, and
//   c^T x = y^T b + sum_{d_j > 0} d_j l_j + sum_{d_j < 0} d_j u_j.
// When infeasible, (y, d) is the same identity for c = 0 and the right-hand
// side above is strictly positive (a Farkas proof).
template <class S>
struct LpResult {
  LpStatus status = LpStatus::iteration_limit;
  std::vector<S> primal;
  std::vector<S> dual;
  std::vector<S> reduced_cost;
  std::vector<int> basis;
  S objective_value{};
  long iterations = 0;
};

struct SimplexOptions {
  long iteration_limit = 0;  // 0: size-based default
};

LpResult<Rational> solve_exact(const LpRelaxation& lp, const SimplexOptions& opt = {});
LpResult<double> solve_float(const LpRelaxation& lp, const SimplexOptions& opt = {});

// y^T b + sum d_j * (l_j or u_j). Throws std::logic_error when a needed bound
// is infinite.
Rational dual_bound(const LpRelaxation& lp, const std::vector<Rational>& y, const std::vector<Rational>& d);

// Row i of B^{-1} for the given basis, via binary64 Gaussian elimination with
// partial pivoting on B^T y = e_i. nullopt when numerically singular.
std::optional<std::vector<double>> basis_inverse_row(const LpRelaxation& lp, const std::vector<int>& basis, int i);

}  // namespace exactcuts
