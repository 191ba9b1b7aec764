#pragma once

#include "exactcuts/rational.hpp"

#include <cstdint>
#include <functional>
#include <istream>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace exactcuts {

using SparseVec = std::map<int, Rational>;
// nullopt encodes an infinite bound.
using Bound = std::optional<Rational>;

enum class Sense { le, ge, eq };

const char* sense_token(Sense s);  // "<=", ">=", "="

struct Variable {
  std::string name;
  Bound lower;
  Bound upper;
  bool is_integer = false;

  bool operator==(const Variable&) const = default;
};

struct Row {
  std::string name;
  SparseVec coefficients;  // never holds explicit zeros
  Sense sense = Sense::le;
  Rational rhs;

  bool operator==(const Row&) const = default;
};

struct Problem {
  std::vector<Variable> variables;
  std::vector<Row> rows;
  SparseVec objective;  // minimised

  std::size_t num_vars() const { return variables.size(); }
  std::optional<int> find_variable(const std::string& name) const;
  bool operator==(const Problem&) const = default;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& what);
  int line() const { return line_; }

 private:
  int line_;
};

// Integer variables get their bounds rounded inward (ceil lower, floor upper).
Problem parse_problem(std::istream& in);
Problem parse_problem_string(const std::string& text);
Problem read_problem_file(const std::string& path);
std::string write_problem(const Problem& p);

// A <= row derived from an original row. `=` rows produce two of these.
struct NormalizedRow {
  SparseVec coefficients;
  Rational rhs;
  int origin = 0;  // index into Problem::rows
  int sign = 1;    // +1: a x <= b kept, -1: negated from a >= row
};
std::vector<NormalizedRow> normalize_rows(const Problem& p);

bool check_assumption_bounds(const Problem& p, const std::set<int>& support);

bool satisfies(const Problem& p, const std::vector<Rational>& x);
bool satisfies_row(const Row& r, const std::vector<Rational>& x);
bool within_bounds(const Problem& p, const std::vector<Rational>& x);
Rational objective_value(const Problem& p, const std::vector<Rational>& x);
Rational dot(const SparseVec& a, const std::vector<Rational>& x);

class OracleUnavailable : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Visits every grid point (integers on integer variables, multiples of
// 1/grid_denominator on continuous ones) that satisfies all rows exactly.
// The visitor may return false to stop early.
void enumerate_feasible(const Problem& p, long grid_denominator,
                        const std::function<bool(const std::vector<Rational>&)>& visit,
                        std::uint64_t cap = 10'000'000);
std::vector<std::vector<Rational>> enumerate_feasible(const Problem& p, long grid_denominator,
                                                      std::uint64_t cap = 10'000'000);

}  // namespace exactcuts
