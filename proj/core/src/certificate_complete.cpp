#include "exactcuts/certificate_complete.hpp"

#include "exactcuts/certificate_builder.hpp"
#include "exactcuts/simplex.hpp"

#include <set>

namespace exactcuts {

using vipr::Certificate;
using vipr::Constraint;
using vipr::Derivation;
using vipr::RuleKind;
using vipr::Term;

namespace {

struct BoundPick {
  int index = -1;
  Rational multiplier;
  Rational contribution;  // multiplier * rhs
};

// Among single-variable constraints on x_j, the term m * constraint with
// coefficient `delta` on x_j that is sense-compatible with `target` and adds
// the least to the rhs (in the direction of target).
std::optional<BoundPick> pick_bound(const Certificate& c, int j, const Rational& delta, Sense target) {
  std::optional<BoundPick> best;
  for (int i = 0; i < c.num_constraints(); ++i) {
    const Constraint& k = c.constraints[i];
    if (k.coefficients.size() != 1 || k.coefficients.begin()->first != j) continue;
    const Rational m = delta / k.coefficients.begin()->second;
    bool first = true;
    auto s = vipr::combine_sense(std::nullopt, k.sense, sgn(m), first);
    if (*s != Sense::eq && *s != target) continue;
    BoundPick p{i, m, m * k.rhs};
    const bool better = !best || (target == Sense::le ? p.contribution < best->contribution
                                                      : p.contribution > best->contribution);
    if (better) best = p;
  }
  return best;
}

std::optional<std::vector<Term>> complete_bounds(const Certificate& c, const Derivation& d) {
  const auto agg = vipr::aggregate(c, d.terms);
  if (!agg.sense || agg.coefficients != d.weak_coefficients) return std::nullopt;
  const Constraint& stated = d.constraint;
  if (stated.sense == Sense::eq) return std::nullopt;
  if (*agg.sense != Sense::eq && *agg.sense != stated.sense) return std::nullopt;
  std::vector<Term> terms = d.terms;
  std::set<int> vars;
  for (const auto& [j, a] : stated.coefficients) vars.insert(j);
  for (const auto& [j, a] : agg.coefficients) vars.insert(j);
  for (int j : vars) {
    Rational delta;
    if (auto it = stated.coefficients.find(j); it != stated.coefficients.end()) delta += it->second;
    if (auto it = agg.coefficients.find(j); it != agg.coefficients.end()) delta -= it->second;
    if (sgn(delta) == 0) continue;
    auto p = pick_bound(c, j, delta, stated.sense);
    if (!p) return std::nullopt;
    terms.push_back({p->index, p->multiplier});
  }
  terms = merge_terms(terms);
  const auto fin = vipr::aggregate(c, terms);
  if (!fin.sense) return std::nullopt;
  if (!vipr::dominates({"", *fin.sense, fin.rhs, fin.coefficients}, stated)) return std::nullopt;
  return terms;
}

std::optional<std::vector<Term>> complete_exact_lp(const Certificate& c, const Derivation& d) {
  const Constraint& stated = d.constraint;
  if (stated.sense == Sense::eq) return std::nullopt;
  // Premises: all problem constraints plus every statement the weak record
  // referenced.
  std::vector<int> premises;
  for (int i = 0; i < c.num_constraints(); ++i) premises.push_back(i);
  for (const auto& t : d.terms)
    if (t.index >= c.num_constraints()) premises.push_back(t.index);
  const int n = static_cast<int>(c.variables.size());
  LpRelaxation lp;
  lp.lower.assign(n, std::nullopt);
  lp.upper.assign(n, std::nullopt);
  std::vector<CertRef> origin;
  for (int i : premises) {
    const Constraint& k = c.at(i);
    if (k.sense != Sense::ge) {
      lp.rows.push_back({k.coefficients, k.rhs});
      origin.push_back({i, 1});
    }
    if (k.sense != Sense::le) {
      SparseVec neg;
      for (const auto& [j, a] : k.coefficients) neg[j] = -a;
      lp.rows.push_back({neg, -k.rhs});
      origin.push_back({i, -1});
    }
  }
  // Maximise a^T x for <=, minimise for >=: minimise -s * a^T x with s = +1 / -1.
  const int s = stated.sense == Sense::le ? 1 : -1;
  for (const auto& [j, a] : stated.coefficients) lp.objective[j] = -s * a;
  const auto res = solve_exact(lp);
  if (res.status != LpStatus::optimal && res.status != LpStatus::infeasible) return std::nullopt;
  // y <= 0 on the <= rows; mu = -y (times s) reproduces s * a^T x <= bound.
  std::vector<Term> terms;
  for (std::size_t k = 0; k < origin.size(); ++k) {
    if (sgn(res.dual[k]) == 0) continue;
    terms.push_back({origin[k].index, -res.dual[k] * origin[k].sign * s});
  }
  terms = merge_terms(terms);
  const auto fin = vipr::aggregate(c, terms);
  if (!fin.sense) return std::nullopt;
  if (!vipr::dominates({"", *fin.sense, fin.rhs, fin.coefficients}, stated)) return std::nullopt;
  return terms;
}

}  // namespace

Certificate complete_certificate(const Certificate& in, CompletionMode mode) {
  Certificate out = in;
  std::vector<int> failed;
  const int m = in.num_constraints();
  for (std::size_t d = 0; d < out.derivations.size(); ++d) {
    Derivation& der = out.derivations[d];
    if (der.rule != RuleKind::weak) continue;
    const int own = m + static_cast<int>(d);
    bool ok = true;
    for (const auto& t : der.terms)
      if (t.index < 0 || t.index >= own) ok = false;
    std::optional<std::vector<Term>> terms;
    if (ok) terms = mode == CompletionMode::bounds ? complete_bounds(out, der) : complete_exact_lp(out, der);
    if (!terms) {
      failed.push_back(own);
      continue;
    }
    der.rule = RuleKind::lin;
    der.terms = std::move(*terms);
    der.weak_coefficients.clear();
  }
  if (!failed.empty()) {
    std::string msg = "completion failed at DER";
    for (int i : failed) msg += " " + std::to_string(i);
    throw CompletionError(msg, failed);
  }
  return out;
}

}  // namespace exactcuts
