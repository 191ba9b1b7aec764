#pragma once

#include "exactcuts/certificate_format.hpp"
#include "exactcuts/problem.hpp"
#include "exactcuts/safe_cuts.hpp"

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace exactcuts {

struct LocalBound {
  Bound lower;
  Bound upper;
  int lower_source = -1;  // certificate index proving the bound, -1 if none
  int upper_source = -1;
};

struct Node {
  std::vector<LocalBound> bounds;  // one per variable
  int depth = 0;
  std::vector<int> parent_assumptions;
  std::optional<Rational> exact_dual_bound;  // nullopt: -inf
};

struct BranchChoice {
  int variable = -1;
  Integer down_upper;  // x <= down_upper | x >= down_upper + 1
};

// Most fractional integer variable, ties to the smallest index.
std::optional<BranchChoice> choose_branch(const std::vector<Rational>& point, const std::vector<bool>& integer_vars);
std::pair<Node, Node> branch(const Node& node, const BranchChoice& choice);

struct SolverConfig {
  bool cuts = true;
  int rounds = 5;
  SeparatorConfig separator;
  long node_limit = 0;      // 0: unlimited
  double time_limit = 0;    // seconds, 0: unlimited
  bool certificate = false;
  std::uint64_t seed = 0;   // reserved: the solver itself is deterministic
};

enum class SolveStatus { optimal, infeasible, time_limit };
const char* to_string(SolveStatus s);

struct SolveStats {
  std::optional<Rational> root_bound_no_cuts;
  std::optional<Rational> root_bound;  // after separation rounds
  bool root_cut_off = false;           // the cuts made the root LP infeasible (bound +inf)
  int separation_rounds = 0;
  double time_total = 0;
  double time_exact_lp = 0;
  double time_float_lp = 0;
  double time_separation = 0;
};

struct SolveResult {
  SolveStatus status = SolveStatus::time_limit;
  std::optional<std::vector<Rational>> incumbent;
  std::optional<Rational> objective;
  std::optional<Rational> dual_bound;  // nullopt: -inf (or +inf when infeasible)
  long node_count = 0;
  int cuts_added = 0;
  SolveStats stats;
  std::optional<vipr::Certificate> certificate;
};

SolveResult solve(const Problem& p, const SolverConfig& cfg);

// (d2 - d1) / (p - d1) clamped to [0, 1]. Throws std::domain_error when p == d1.
Rational gap_closed(const Rational& p, const Rational& d1, const Rational& d2);

}  // namespace exactcuts
