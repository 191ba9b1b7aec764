#pragma once

#include "exactcuts/branch_and_bound.hpp"
#include "exactcuts/problem.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace exactcuts {

struct GeneratorConfig {
  int min_vars = 2;
  int max_vars = 6;
  int max_rows = 8;
  int max_bound = 12;
  bool mixed = false;               // allow continuous variables
  double infeasible_share = 0.15;   // rows with an unanchored rhs
};

// Deterministic for a given seed on every platform (mt19937_64, modulo draws).
Problem generate_instance(std::uint64_t seed, const GeneratorConfig& cfg = {});

struct RunRecord {
  std::string instance;
  std::string status;
  std::optional<Rational> objective;
  std::optional<Rational> root_bound_no_cuts;
  std::optional<Rational> root_bound;
  std::optional<Rational> dual_bound;
  long nodes = 0;
  int cuts = 0;
  double time_total = 0;
  double time_exact_lp = 0;
  double time_float_lp = 0;
  double time_separation = 0;
};

RunRecord make_record(const std::string& instance, const SolveResult& r);
std::string records_to_json(const std::vector<RunRecord>& records);
std::vector<RunRecord> records_from_json(const std::string& text);

// exp(mean(log(v + shift))) - shift
double shifted_geometric_mean(const std::vector<double>& values, double shift);

struct ReferenceValue {
  std::string status;
  std::optional<Rational> objective;
};

struct ReportRow {
  std::string instance;
  std::string status;
  std::optional<Rational> objective;
  std::optional<Rational> gap_closed_root;
  std::optional<Rational> gap_closed_limit;
  long nodes = 0;
  int cuts = 0;
  double time_total = 0;
  double time_exact_lp = 0;
  double time_float_lp = 0;
};

struct Report {
  std::vector<ReportRow> rows;
  std::vector<std::string> warnings;
  double sgm_time = 0;
  double sgm_nodes = 0;
};

// References are keyed by instance name; without one an instance is compared
// against its own optimum.
Report build_report(const std::vector<RunRecord>& records,
                    const std::vector<std::pair<std::string, ReferenceValue>>& references);
std::string report_csv(const Report& r, bool timings);
std::string report_table(const Report& r, bool timings);

}  // namespace exactcuts
