#pragma once

#include "exactcuts/continued_fraction.hpp"
#include "exactcuts/problem.hpp"
#include "exactcuts/rational.hpp"
#include "exactcuts/simplex.hpp"

#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

namespace exactcuts {

// Which finite bound a variable is measured from. `none` only for variables
// without finite bounds; any inexact step touching them abandons the cut.
enum class Side { none, lower, upper };

struct Domain {
  std::vector<Bound> lower;
  std::vector<Bound> upper;
  std::vector<bool> is_integer;

  int size() const { return static_cast<int>(lower.size()); }
  const Bound& bound(int j, Side s) const;
};

Domain domain_of(const LpRelaxation& lp, const std::vector<bool>& is_integer);

class CutAbandoned : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class AssumptionViolated : public CutAbandoned {
 public:
  using CutAbandoned::CutAbandoned;
};

// F-representable relaxation of one LP row (make_representable output).
struct RelaxedRow {
  std::map<int, double> coefficients;
  double rhs = 0;
  bool relaxed = false;   // differs from the exact row
  bool integral = false;  // integer coefficients on integer variables only, integer rhs
};

struct SlackTerm {
  double multiplier = 0;
  bool treat_integer = false;
};

// alpha^T x + sum_k lambda_k s_k <= beta with every scalar in F. s_k is the
// slack of relaxed row k.
struct FRow {
  std::map<int, double> coefficients;
  double rhs = 0;
  std::map<int, Side> side_choice;
  std::map<int, SlackTerm> slack_terms;
};

struct MirTerm {
  bool slack = false;
  int index = 0;          // variable, or LP row for slacks
  Side side = Side::lower;
  Rational bound;         // l_j or u_j (0 for slacks)
  Rational g;             // coefficient in the transformed space
  bool is_integer = false;
  Rational exact_coef;    // exact MIR coefficient
  Rational safe_coef;     // round_down(exact_coef)
};

struct MirData {
  Rational d;             // transformed rhs (in F)
  Integer floor_d;
  Rational f;
  std::vector<MirTerm> terms;
};

struct AggregationRecord {
  std::map<int, double> multipliers;
  std::map<int, Rational> bound_multipliers;
  std::map<int, Rational> exact_slack_corrections;
};

struct Cut {
  SparseVec coefficients;  // a^T x <= rhs
  Rational rhs;
  std::map<int, double> slack_coefficients;  // non-empty until substitute_slacks

  MirData mir;
  AggregationRecord aggregation;
  std::map<int, RelaxedRow> frows;  // relaxed LP rows the base row came from
  std::map<int, Side> side_choice;

  Rational scaling_factor = 1;
  bool integral_scaled = false;
  SparseVec pre_round_coefficients;  // integral scaling: cut before flooring the rhs
  Rational pre_round_rhs;
  bool denominator_limited = false;
  double efficacy = 0;
};

RelaxedRow make_representable(const LpRow& row, const Domain& dom, const std::map<int, Side>& sides);

FRow safe_aggregate(const std::map<int, RelaxedRow>& rows, const std::map<int, double>& multipliers,
                    const Domain& dom, const std::map<int, Side>& sides);

std::map<int, Side> choose_bound_sides(const Domain& dom, const std::vector<double>& lp_point);

// nullopt when the fractionality of the transformed rhs is outside
// [f_min, 1 - f_min].
std::optional<Cut> safe_mir(const FRow& frow, const Domain& dom, double f_min = 0.01);

Cut substitute_slacks(Cut cut, const Domain& dom, bool certificate_mode);

Cut scale_cut(Cut cut, const Domain& dom);

Cut limit_denominators(Cut cut, const Integer& max_den, const Domain& dom);

struct SeparatorConfig {
  double f_min = 0.01;
  int max_cuts = 10;
  long max_denominator = 1L << 17;  // 0 disables denominator limiting
  bool scaling = true;
  bool certificate_mode = false;
  double min_efficacy = 1e-6;
  double max_parallelism = 0.999;
};

double efficacy(const SparseVec& a, const Rational& rhs, const std::vector<double>& x);

std::vector<Cut> separate_gmi(const LpRelaxation& lp, const std::vector<bool>& is_integer,
                              const LpResult<double>& lp_result, const SeparatorConfig& cfg);

}  // namespace exactcuts
