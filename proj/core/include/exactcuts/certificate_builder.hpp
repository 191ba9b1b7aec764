#pragma once

#include "exactcuts/certificate_format.hpp"
#include "exactcuts/problem.hpp"

#include <optional>
#include <string>
#include <vector>

namespace exactcuts {

// Reference to a certificate constraint such that sign * constraint is the
// corresponding <= row of the LP.
struct CertRef {
  int index = -1;
  int sign = 1;
};

// Accumulates a certificate in memory while the solver runs. Every statement
// added through lin/rnd is computed by aggregation, never typed in.
class CertificateBuilder {
 public:
  explicit CertificateBuilder(const Problem& p);

  // One entry per row of normalize_rows(p).
  const std::vector<CertRef>& normalized_row_refs() const { return row_refs_; }
  std::optional<int> lower_bound_constraint(int j) const { return lower_[j]; }
  std::optional<int> upper_bound_constraint(int j) const { return upper_[j]; }

  const vipr::Constraint& at(int index) const { return cert_.at(index); }
  int next_index() const { return cert_.size(); }

  int add_assumption(const std::string& name, const vipr::Constraint& c);
  int add_lin(const std::string& name, const std::vector<vipr::Term>& terms);
  int add_rnd(const std::string& name, const std::vector<vipr::Term>& terms);
  int add_weak(const std::string& name, const vipr::Constraint& stated, const std::vector<vipr::Term>& terms);
  int add_uns(const std::string& name, const vipr::Constraint& stated, int i1, int a1, int i2, int a2);

  void set_infeasible();
  void set_optimal(const Rational& value, const std::vector<Rational>& solution);

  const vipr::Certificate& certificate() const { return cert_; }
  vipr::Certificate take() { return std::move(cert_); }

 private:
  int push(vipr::Derivation d);

  vipr::Certificate cert_;
  std::vector<CertRef> row_refs_;
  std::vector<std::optional<int>> lower_, upper_;
};

// Merge terms on the same index and drop zero multipliers; order by index.
std::vector<vipr::Term> merge_terms(const std::vector<vipr::Term>& terms);

}  // namespace exactcuts
