#pragma once

#include "exactcuts/problem.hpp"
#include "exactcuts/rational.hpp"

#include <istream>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace exactcuts::vipr {

using exactcuts::Sense;

struct Constraint {
  std::string name;
  Sense sense = Sense::le;
  Rational rhs;
  SparseVec coefficients;

  bool operator==(const Constraint&) const = default;
};

enum class RuleKind { assumption, lin, rnd, uns, weak };
const char* rule_token(RuleKind k);

struct Term {
  int index = 0;
  Rational multiplier;

  bool operator==(const Term&) const = default;
};

struct Derivation {
  Constraint constraint;
  RuleKind rule = RuleKind::assumption;
  std::vector<Term> terms;  // lin, rnd, weak
  int i1 = -1, a1 = -1, i2 = -1, a2 = -1;  // uns
  SparseVec weak_coefficients;  // weak: exact aggregated coefficients of `terms`

  bool operator==(const Derivation&) const = default;
};

struct Rtp {
  bool infeasible = false;
  Bound lower;  // nullopt: -inf
  Bound upper;  // nullopt: +inf

  bool operator==(const Rtp&) const = default;
};

struct Solution {
  std::string name;
  SparseVec values;

  bool operator==(const Solution&) const = default;
};

// Global index space: constraints are 0..m-1, derivation k is m + k.
struct Certificate {
  std::vector<std::string> variables;
  std::vector<int> integers;
  SparseVec objective;
  std::vector<Constraint> constraints;
  int bound_constraints = 0;  // informational second count on the CON line
  Rtp rtp;
  std::vector<Solution> solutions;
  std::vector<Derivation> derivations;

  int num_constraints() const { return static_cast<int>(constraints.size()); }
  int size() const { return num_constraints() + static_cast<int>(derivations.size()); }
  const Constraint& at(int global_index) const;
  bool operator==(const Certificate&) const = default;
};

class CertParseError : public std::runtime_error {
 public:
  CertParseError(int line, const std::string& what);
  int line() const { return line_; }

 private:
  int line_;
};

Certificate parse_certificate(std::istream& in);
Certificate parse_certificate_string(const std::string& text);
Certificate read_certificate_file(const std::string& path);
std::string write_certificate(const Certificate& c);
void write_certificate_file(const Certificate& c, const std::string& path);

// Sum of multiplier * constraint. `sense` is nullopt when the terms have
// incompatible directions. An empty or all-zero combination is "0 = 0".
struct Aggregate {
  SparseVec coefficients;
  Rational rhs;
  std::optional<Sense> sense;
};
Aggregate aggregate(const Certificate& c, const std::vector<Term>& terms);
// Same, with an arbitrary lookup for the referenced statements.
template <class Lookup>
Aggregate aggregate_with(const std::vector<Term>& terms, Lookup&& lookup);

bool is_falsehood(const Constraint& c);
bool is_falsehood(const SparseVec& coefs, Sense sense, const Rational& rhs);
// a dominates b: every point satisfying a satisfies b, in the syntactic sense
// used by the checker (falsehood, or equal coefficients and a tighter rhs).
bool dominates(const Constraint& a, const Constraint& b);

std::optional<Sense> combine_sense(std::optional<Sense> acc, Sense s, int mult_sign, bool& first);

template <class Lookup>
Aggregate aggregate_with(const std::vector<Term>& terms, Lookup&& lookup) {
  Aggregate out;
  bool first = true;
  bool ok = true;
  std::optional<Sense> sense;
  for (const auto& t : terms) {
    const int s = sgn(t.multiplier);
    if (s == 0) continue;
    const Constraint& c = lookup(t.index);
    sense = combine_sense(sense, c.sense, s, first);
    if (!sense) ok = false;
    for (const auto& [j, a] : c.coefficients) {
      Rational& v = out.coefficients[j];
      v += t.multiplier * a;
      if (sgn(v) == 0) out.coefficients.erase(j);
    }
    out.rhs += t.multiplier * c.rhs;
  }
  if (first) sense = Sense::eq;
  out.sense = ok ? sense : std::nullopt;
  return out;
}

}  // namespace exactcuts::vipr
