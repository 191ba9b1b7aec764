#include "exactcuts/certificate_builder.hpp"

#include <map>
#include <stdexcept>

namespace exactcuts {

using vipr::Constraint;
using vipr::Derivation;
using vipr::RuleKind;
using vipr::Term;

CertificateBuilder::CertificateBuilder(const Problem& p) {
  for (const auto& v : p.variables) cert_.variables.push_back(v.name);
  for (std::size_t j = 0; j < p.variables.size(); ++j)
    if (p.variables[j].is_integer) cert_.integers.push_back(static_cast<int>(j));
  cert_.objective = p.objective;

  std::vector<std::pair<int, int>> first_index(p.rows.size());
  for (std::size_t i = 0; i < p.rows.size(); ++i) {
    const Row& r = p.rows[i];
    const int base = cert_.num_constraints();
    if (r.sense == Sense::eq) {
      cert_.constraints.push_back({r.name + "_L", Sense::le, r.rhs, r.coefficients});
      cert_.constraints.push_back({r.name + "_G", Sense::ge, r.rhs, r.coefficients});
    } else {
      cert_.constraints.push_back({r.name, r.sense, r.rhs, r.coefficients});
    }
    first_index[i] = {base, r.sense == Sense::eq ? base + 1 : base};
  }
  for (const auto& nr : normalize_rows(p)) {
    const Row& r = p.rows[nr.origin];
    if (nr.sign > 0) row_refs_.push_back({first_index[nr.origin].first, 1});
    else row_refs_.push_back({r.sense == Sense::eq ? first_index[nr.origin].second : first_index[nr.origin].first, -1});
  }
  lower_.resize(p.variables.size());
  upper_.resize(p.variables.size());
  for (std::size_t j = 0; j < p.variables.size(); ++j) {
    const auto& v = p.variables[j];
    const SparseVec unit{{static_cast<int>(j), Rational(1)}};
    if (v.lower) {
      lower_[j] = cert_.num_constraints();
      cert_.constraints.push_back({"lb_" + v.name, Sense::ge, *v.lower, unit});
    }
    if (v.upper) {
      upper_[j] = cert_.num_constraints();
      cert_.constraints.push_back({"ub_" + v.name, Sense::le, *v.upper, unit});
    }
  }
  cert_.bound_constraints = 0;
  for (std::size_t j = 0; j < p.variables.size(); ++j)
    cert_.bound_constraints += (lower_[j] ? 1 : 0) + (upper_[j] ? 1 : 0);
}

std::vector<Term> merge_terms(const std::vector<Term>& terms) {
  std::map<int, Rational> acc;
  for (const auto& t : terms) acc[t.index] += t.multiplier;
  std::vector<Term> out;
  for (const auto& [i, m] : acc)
    if (sgn(m) != 0) out.push_back({i, m});
  return out;
}

int CertificateBuilder::push(Derivation d) {
  for (const auto& t : d.terms)
    if (t.index < 0 || t.index >= cert_.size()) throw std::logic_error("certificate: bad reference");
  cert_.derivations.push_back(std::move(d));
  return cert_.size() - 1;
}

int CertificateBuilder::add_assumption(const std::string& name, const Constraint& c) {
  Derivation d;
  d.constraint = c;
  d.constraint.name = name;
  d.rule = RuleKind::assumption;
  return push(std::move(d));
}

namespace {
Constraint statement(const vipr::Certificate& cert, const std::vector<Term>& terms, const std::string& name) {
  const auto agg = vipr::aggregate(cert, terms);
  if (!agg.sense) throw std::logic_error("certificate: incompatible multiplier signs in '" + name + "'");
  return {name, *agg.sense, agg.rhs, agg.coefficients};
}
}  // namespace

int CertificateBuilder::add_lin(const std::string& name, const std::vector<Term>& terms) {
  Derivation d;
  d.terms = merge_terms(terms);
  d.constraint = statement(cert_, d.terms, name);
  d.rule = RuleKind::lin;
  return push(std::move(d));
}

int CertificateBuilder::add_rnd(const std::string& name, const std::vector<Term>& terms) {
  Derivation d;
  d.terms = merge_terms(terms);
  Constraint c = statement(cert_, d.terms, name);
  if (c.sense == Sense::le) c.rhs = Rational(floor_of(c.rhs));
  else if (c.sense == Sense::ge) c.rhs = Rational(ceil_of(c.rhs));
  else throw std::logic_error("certificate: rounding an equation");
  d.constraint = c;
  d.rule = RuleKind::rnd;
  return push(std::move(d));
}

int CertificateBuilder::add_weak(const std::string& name, const Constraint& stated, const std::vector<Term>& terms) {
  Derivation d;
  d.terms = merge_terms(terms);
  const auto agg = vipr::aggregate(cert_, d.terms);
  if (!agg.sense) throw std::logic_error("certificate: incompatible multiplier signs in '" + name + "'");
  d.constraint = stated;
  d.constraint.name = name;
  d.rule = RuleKind::weak;
  d.weak_coefficients = agg.coefficients;
  return push(std::move(d));
}

int CertificateBuilder::add_uns(const std::string& name, const Constraint& stated, int i1, int a1, int i2, int a2) {
  Derivation d;
  d.constraint = stated;
  d.constraint.name = name;
  d.rule = RuleKind::uns;
  d.i1 = i1;
  d.a1 = a1;
  d.i2 = i2;
  d.a2 = a2;
  return push(std::move(d));
}

void CertificateBuilder::set_infeasible() {
  cert_.rtp = {true, std::nullopt, std::nullopt};
  cert_.solutions.clear();
}

void CertificateBuilder::set_optimal(const Rational& value, const std::vector<Rational>& solution) {
  cert_.rtp = {false, value, value};
  vipr::Solution s;
  s.name = "incumbent";
  for (std::size_t j = 0; j < solution.size(); ++j)
    if (sgn(solution[j]) != 0) s.values[static_cast<int>(j)] = solution[j];
  cert_.solutions = {s};
}

}  // namespace exactcuts
