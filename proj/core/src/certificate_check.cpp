#include "exactcuts/certificate_check.hpp"

#include <algorithm>
#include <set>

namespace exactcuts::vipr {

namespace {

Verdict reject(std::string why, int index = -1) { return {false, std::move(why), index, -1}; }

bool integral_on_integers(const SparseVec& coefs, const std::vector<bool>& is_int) {
  for (const auto& [j, a] : coefs)
    if (!is_int[j] || !is_integer(a)) return false;
  return true;
}

}  // namespace

Verdict check_certificate(const Certificate& c) {
  const int n = static_cast<int>(c.variables.size());
  const int m = c.num_constraints();
  std::vector<bool> is_int(n, false);
  for (int j : c.integers) {
    if (j < 0 || j >= n) return reject("integer index out of range");
    is_int[j] = true;
  }
  auto in_range = [&](const SparseVec& v) {
    return std::all_of(v.begin(), v.end(), [&](const auto& e) { return e.first >= 0 && e.first < n; });
  };
  if (!in_range(c.objective)) return reject("objective index out of range");
  for (const auto& k : c.constraints)
    if (!in_range(k.coefficients)) return reject("constraint '" + k.name + "' has an index out of range");

  // Solutions: exactly feasible and integral.
  std::optional<Rational> best;
  for (const auto& s : c.solutions) {
    if (!in_range(s.values)) return reject("solution '" + s.name + "' has an index out of range");
    for (const auto& [j, v] : s.values)
      if (is_int[j] && !is_integer(v)) return reject("solution '" + s.name + "' is not integral");
    auto val = [&](const SparseVec& a) {
      Rational r;
      for (const auto& [j, x] : s.values)
        if (auto it = a.find(j); it != a.end()) r += it->second * x;
      return r;
    };
    for (const auto& k : c.constraints) {
      const Rational lhs = val(k.coefficients);
      const bool ok = k.sense == Sense::le ? lhs <= k.rhs : (k.sense == Sense::ge ? lhs >= k.rhs : lhs == k.rhs);
      if (!ok) return reject("solution '" + s.name + "' violates constraint '" + k.name + "'");
    }
    const Rational obj = val(c.objective);
    if (!best || obj < *best) best = obj;
  }
  if (c.rtp.infeasible) {
    if (!c.solutions.empty()) return reject("infeasibility claimed but a feasible solution is listed");
  } else {
    if (!c.rtp.lower) return reject("RTP lower bound -inf proves nothing");
    if (c.rtp.upper && *c.rtp.upper < *c.rtp.lower) return reject("RTP range is empty");
    if (c.rtp.upper && (!best || *best > *c.rtp.upper))
      return reject("no listed solution attains the RTP upper bound");
  }

  std::vector<std::set<int>> assumptions(c.derivations.size());
  auto asm_of = [&](int idx) -> const std::set<int>& {
    static const std::set<int> none;
    return idx < m ? none : assumptions[idx - m];
  };

  for (std::size_t d = 0; d < c.derivations.size(); ++d) {
    const int own = m + static_cast<int>(d);
    const Derivation& der = c.derivations[d];
    const Constraint& stated = der.constraint;
    if (!in_range(stated.coefficients)) return reject("coefficient index out of range", own);
    auto backward = [&](int idx) { return idx >= 0 && idx < own; };
    std::set<int>& A = assumptions[d];
    switch (der.rule) {
      case RuleKind::assumption:
        A.insert(own);
        break;
      case RuleKind::weak:
        return reject("weak record at DER " + std::to_string(own) + " (run completion first)", own);
      case RuleKind::lin:
      case RuleKind::rnd: {
        for (const auto& t : der.terms) {
          if (!backward(t.index)) return reject("reference to a later or unknown index", own);
          if (sgn(t.multiplier) != 0) A.insert(asm_of(t.index).begin(), asm_of(t.index).end());
        }
        const Aggregate agg = aggregate(c, der.terms);
        if (!agg.sense) return reject("multiplier signs incompatible with constraint senses", own);
        Constraint derived{"", *agg.sense, agg.rhs, agg.coefficients};
        if (der.rule == RuleKind::rnd) {
          if (derived.sense == Sense::eq) return reject("rounding an equation", own);
          if (!integral_on_integers(derived.coefficients, is_int))
            return reject("rounding needs integer coefficients on integer variables", own);
          const Rational rounded(derived.sense == Sense::le ? floor_of(derived.rhs) : ceil_of(derived.rhs));
          if (stated.sense != derived.sense || stated.coefficients != derived.coefficients || stated.rhs != rounded)
            return reject("rounded conclusion does not match", own);
        } else if (!dominates(derived, stated)) {
          return reject("aggregation does not dominate the stated constraint", own);
        }
        break;
      }
      case RuleKind::uns: {
        for (int idx : {der.i1, der.a1, der.i2, der.a2})
          if (!backward(idx)) return reject("reference to a later or unknown index", own);
        if (der.a1 < m || der.a2 < m || c.derivations[der.a1 - m].rule != RuleKind::assumption ||
            c.derivations[der.a2 - m].rule != RuleKind::assumption)
          return reject("unsplit must name two assumptions", own);
        if (!dominates(c.at(der.i1), stated) || !dominates(c.at(der.i2), stated))
          return reject("unsplit premises do not dominate the conclusion", own);
        const Constraint& p = c.at(der.a1);
        const Constraint& q = c.at(der.a2);
        const bool complementary =
            p.coefficients == q.coefficients && integral_on_integers(p.coefficients, is_int) && is_integer(p.rhs) &&
            is_integer(q.rhs) &&
            ((p.sense == Sense::le && q.sense == Sense::ge && q.rhs == p.rhs + 1) ||
             (p.sense == Sense::ge && q.sense == Sense::le && p.rhs == q.rhs + 1));
        if (!complementary) return reject("assumptions are not a complementary split", own);
        for (int a : asm_of(der.i1))
          if (a != der.a1) A.insert(a);
        for (int a : asm_of(der.i2))
          if (a != der.a2) A.insert(a);
        break;
      }
    }
  }

  if (c.derivations.empty()) return reject("no derivations");
  const int last = c.size() - 1;
  if (!assumptions.back().empty()) return reject("undischarged assumptions in the final derivation", last);
  const Constraint& fin = c.derivations.back().constraint;
  if (c.rtp.infeasible) {
    if (!is_falsehood(fin)) return reject("final derivation is not a contradiction", last);
  } else {
    const Constraint goal{"", Sense::ge, *c.rtp.lower, c.objective};
    if (!dominates(fin, goal)) return reject("final derivation does not prove the objective bound", last);
  }
  return {true, "", -1, -1};
}

Verdict check_certificate_stream(std::istream& in) {
  try {
    return check_certificate(parse_certificate(in));
  } catch (const CertParseError& e) {
    return {false, e.what(), -1, e.line()};
  }
}

}  // namespace exactcuts::vipr
