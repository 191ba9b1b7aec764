#include "exactcuts/safe_cuts.hpp"

#include "exactcuts/directed_rounding.hpp"

#include <cmath>
#include <set>

namespace exactcuts {

const Bound& Domain::bound(int j, Side s) const {
  static const Bound none;
  if (s == Side::lower) return lower.at(j);
  if (s == Side::upper) return upper.at(j);
  return none;
}

Domain domain_of(const LpRelaxation& lp, const std::vector<bool>& is_integer) {
  return {lp.lower, lp.upper, is_integer};
}

namespace {

Side side_of(const std::map<int, Side>& sides, int j) {
  auto it = sides.find(j);
  return it == sides.end() ? Side::none : it->second;
}

double checked(double v, const char* what) {
  if (!std::isfinite(v)) throw CutAbandoned(std::string(what) + " saturated");
  return v;
}

// Directed value of a coefficient whose exact value lies in [down, up], plus
// the rhs correction that makes replacing the exact value valid.
double pick_directed(int j, double up, double down, Side side, const Domain& dom, Rational& correction) {
  if (up == down) return up;
  if (side == Side::upper) {
    const Rational& u = *dom.upper.at(j);
    if (sgn(u) > 0) correction += (Rational(up) - Rational(down)) * u;
    return up;
  }
  if (side == Side::lower) {
    const Rational& l = *dom.lower.at(j);
    if (sgn(l) < 0) correction += (Rational(down) - Rational(up)) * l;
    return down;
  }
  throw AssumptionViolated("variable " + std::to_string(j) + " has no finite bound");
}

}  // namespace

RelaxedRow make_representable(const LpRow& row, const Domain& dom, const std::map<int, Side>& sides) {
  RelaxedRow out;
  Rational correction;
  for (const auto& [j, a] : row.coefficients) {
    const double up = round_up(a), down = round_down(a);
    if (!std::isfinite(up) || !std::isfinite(down)) throw CutAbandoned("coefficient out of range");
    const double c = pick_directed(j, up, down, side_of(sides, j), dom, correction);
    if (up != down) out.relaxed = true;
    if (c != 0.0) out.coefficients.emplace(j, c);
  }
  out.rhs = checked(round_up(row.rhs + correction), "rhs");
  if (Rational(out.rhs) != row.rhs) out.relaxed = true;
  out.integral = std::floor(out.rhs) == out.rhs;
  for (const auto& [j, c] : out.coefficients)
    if (!dom.is_integer.at(j) || std::floor(c) != c) out.integral = false;
  return out;
}

FRow safe_aggregate(const std::map<int, RelaxedRow>& rows, const std::map<int, double>& multipliers,
                    const Domain& dom, const std::map<int, Side>& sides) {
  std::map<int, std::pair<std::vector<double>, std::vector<double>>> terms;
  Rational rhs;
  FRow out;
  for (const auto& [k, lambda] : multipliers) {
    if (lambda == 0.0) continue;
    checked(lambda, "multiplier");
    const RelaxedRow& r = rows.at(k);
    for (const auto& [j, a] : r.coefficients) {
      auto& t = terms[j];
      t.first.push_back(safe_mul_up(lambda, a));
      t.second.push_back(safe_mul_down(lambda, a));
    }
    rhs += Rational(lambda) * Rational(r.rhs);
    out.slack_terms[k] = {lambda, r.integral};
  }
  Rational correction;
  for (const auto& [j, t] : terms) {
    const double up = checked(safe_sum_up(t.first), "aggregated coefficient");
    const double down = checked(safe_sum_down(t.second), "aggregated coefficient");
    const Side side = side_of(sides, j);
    const double c = pick_directed(j, up, down, side, dom, correction);
    if (c != 0.0) {
      out.coefficients.emplace(j, c);
      out.side_choice[j] = side;
    }
  }
  out.rhs = checked(round_up(rhs + correction), "aggregated rhs");
  return out;
}

std::map<int, Side> choose_bound_sides(const Domain& dom, const std::vector<double>& lp_point) {
  std::map<int, Side> sides;
  for (int j = 0; j < dom.size(); ++j) {
    const Bound& l = dom.lower[j];
    const Bound& u = dom.upper[j];
    if (l && u) {
      const double v = j < static_cast<int>(lp_point.size()) ? lp_point[j] : 0.0;
      if (!std::isfinite(v)) {
        sides[j] = Side::lower;
        continue;
      }
      const Rational x(v);
      sides[j] = abs(*u - x) < abs(x - *l) ? Side::upper : Side::lower;
    } else if (l) {
      sides[j] = Side::lower;
    } else if (u) {
      sides[j] = Side::upper;
    } else {
      sides[j] = Side::none;
    }
  }
  return sides;
}

std::optional<Cut> safe_mir(const FRow& frow, const Domain& dom, double f_min) {
  MirData mir;
  Rational shifted(frow.rhs);
  for (const auto& [j, a] : frow.coefficients) {
    const Side side = side_of(frow.side_choice, j);
    const Bound& b = dom.bound(j, side);
    if (!b) throw AssumptionViolated("variable " + std::to_string(j) + " has no finite bound");
    MirTerm t;
    t.index = j;
    t.side = side;
    t.bound = *b;
    t.g = side == Side::lower ? Rational(a) : Rational(-a);
    t.is_integer = dom.is_integer.at(j);
    shifted -= Rational(a) * *b;
    mir.terms.push_back(std::move(t));
  }
  for (const auto& [k, s] : frow.slack_terms) {
    MirTerm t;
    t.slack = true;
    t.index = k;
    t.g = Rational(s.multiplier);
    t.is_integer = s.treat_integer;
    mir.terms.push_back(std::move(t));
  }
  mir.d = Rational(checked(round_up(shifted), "transformed rhs"));
  mir.floor_d = floor_of(mir.d);
  mir.f = mir.d - Rational(mir.floor_d);
  if (mir.f < Rational(f_min) || mir.f > 1 - Rational(f_min)) return std::nullopt;
  const Rational one_minus_f = 1 - mir.f;
  if (round_down(one_minus_f) == 0.0) throw CutAbandoned("1 - f underflows");

  Cut cut;
  Rational rhs(mir.floor_d);
  for (auto& t : mir.terms) {
    if (t.is_integer) {
      const Rational fj = frac_of(t.g);
      t.exact_coef = Rational(floor_of(t.g));
      if (fj > mir.f) t.exact_coef += (fj - mir.f) / one_minus_f;
    } else {
      t.exact_coef = sgn(t.g) < 0 ? Rational(t.g / one_minus_f) : Rational(0);
    }
    const double c = checked(round_down(t.exact_coef), "MIR coefficient");
    t.safe_coef = Rational(c);
    if (c == 0.0) continue;
    if (t.slack) {
      cut.slack_coefficients[t.index] = c;
    } else if (t.side == Side::lower) {
      cut.coefficients[t.index] = t.safe_coef;
      rhs += t.safe_coef * t.bound;
    } else {
      cut.coefficients[t.index] = -t.safe_coef;
      rhs -= t.safe_coef * t.bound;
    }
  }
  cut.rhs = Rational(checked(round_up(rhs), "cut rhs"));
  for (const auto& [k, s] : frow.slack_terms) cut.aggregation.multipliers[k] = s.multiplier;
  cut.side_choice = frow.side_choice;
  cut.mir = std::move(mir);
  return cut;
}

Cut substitute_slacks(Cut cut, const Domain& dom, bool certificate_mode) {
  if (cut.slack_coefficients.empty()) return cut;
  std::set<int> support;
  for (const auto& [j, c] : cut.coefficients) support.insert(j);
  for (const auto& [k, c] : cut.slack_coefficients)
    for (const auto& [j, a] : cut.frows.at(k).coefficients) support.insert(j);

  Rational rhs = cut.rhs, correction;
  for (const auto& [k, c] : cut.slack_coefficients) rhs -= Rational(c) * Rational(cut.frows.at(k).rhs);

  SparseVec coefs;
  for (int j : support) {
    std::vector<double> up, down;
    if (auto it = cut.coefficients.find(j); it != cut.coefficients.end()) {
      up.push_back(it->second.get_d());
      down.push_back(it->second.get_d());
    }
    for (const auto& [k, c] : cut.slack_coefficients) {
      const auto& row = cut.frows.at(k).coefficients;
      if (auto it = row.find(j); it != row.end()) {
        up.push_back(safe_mul_up(-c, it->second));
        down.push_back(safe_mul_down(-c, it->second));
      }
    }
    const double hi = checked(safe_sum_up(up), "substituted coefficient");
    const double lo = checked(safe_sum_down(down), "substituted coefficient");
    const double v = pick_directed(j, hi, lo, side_of(cut.side_choice, j), dom, correction);
    if (v != 0.0) coefs[j] = Rational(v);
  }
  if (certificate_mode) {
    for (const auto& t : cut.mir.terms)
      if (t.slack) cut.aggregation.exact_slack_corrections[t.index] = t.exact_coef - t.safe_coef;
  }
  cut.coefficients = std::move(coefs);
  cut.rhs = Rational(checked(round_up(rhs + correction), "substituted rhs"));
  cut.slack_coefficients.clear();
  return cut;
}

namespace {

Cut equilibrium_scale(Cut cut) {
  double maxabs = 0;
  for (const auto& [j, a] : cut.coefficients) maxabs = std::max(maxabs, std::fabs(a.get_d()));
  if (maxabs == 0.0) return cut;
  const int k = -static_cast<int>(std::lround(std::log2(maxabs)));
  if (k == 0) return cut;
  Rational s(1);
  if (k > 0) mpz_mul_2exp(s.get_num_mpz_t(), s.get_num_mpz_t(), static_cast<unsigned long>(k));
  else mpz_mul_2exp(s.get_den_mpz_t(), s.get_den_mpz_t(), static_cast<unsigned long>(-k));
  SparseVec scaled;
  for (const auto& [j, a] : cut.coefficients) {
    Rational v = a * s;
    if (!is_representable(v)) return cut;
    scaled[j] = v;
  }
  Rational rhs = cut.rhs * s;
  if (!is_representable(rhs)) return cut;
  cut.coefficients = std::move(scaled);
  cut.rhs = rhs;
  cut.scaling_factor *= s;
  return cut;
}

std::optional<Cut> integral_scale(Cut cut, const Domain& dom) {
  const Rational tol(1, 1000000);
  const Integer max_scm = 100000;
  Integer scm = 1;
  for (const auto& [j, a] : cut.coefficients) {
    auto c = convergent_within(a, tol, max_scm);
    if (!c) return std::nullopt;
    mpz_lcm(scm.get_mpz_t(), scm.get_mpz_t(), c->q.get_mpz_t());
    if (scm > max_scm) return std::nullopt;
  }
  const Rational s(scm);
  Rational rhs = cut.rhs * s;
  SparseVec coefs;
  for (const auto& [j, a] : cut.coefficients) {
    const Rational v = a * s;
    Integer n = floor_of(v + Rational(1, 2));
    auto apply = [&](const Integer& cand) -> bool {
      const Rational delta = Rational(cand) - v;
      if (sgn(delta) == 0) return true;
      const Bound& b = sgn(delta) > 0 ? dom.upper.at(j) : dom.lower.at(j);
      if (!b) return false;
      rhs += delta * *b;
      return true;
    };
    if (!apply(n)) {
      n = Rational(n) > v ? floor_of(v) : ceil_of(v);
      if (!apply(n)) return std::nullopt;
    }
    if (n != 0) coefs[j] = Rational(n);
  }
  const Rational floored(floor_of(rhs));
  for (const auto& [j, c] : coefs)
    if (!is_representable(c)) return std::nullopt;
  if (!is_representable(floored)) return std::nullopt;
  cut.pre_round_coefficients = coefs;
  cut.pre_round_rhs = rhs;
  cut.coefficients = std::move(coefs);
  cut.rhs = floored;
  cut.scaling_factor *= s;
  cut.integral_scaled = true;
  return cut;
}

}  // namespace

Cut scale_cut(Cut cut, const Domain& dom) {
  bool has_continuous = false;
  for (const auto& [j, a] : cut.coefficients)
    if (!dom.is_integer.at(j)) has_continuous = true;
  if (!has_continuous && !cut.coefficients.empty()) {
    if (auto scaled = integral_scale(cut, dom)) return std::move(*scaled);
  }
  return equilibrium_scale(std::move(cut));
}

Cut limit_denominators(Cut cut, const Integer& max_den, const Domain& dom) {
  if (cut.integral_scaled) return cut;
  SparseVec coefs;
  Rational rhs = cut.rhs;
  for (const auto& [j, a] : cut.coefficients) {
    Rational v = a;
    const Side side = side_of(cut.side_choice, j);
    if (a.get_den() > max_den && side != Side::none) {
      ApproxDirection dir;
      if (side == Side::lower) dir = dom.upper.at(j) ? ApproxDirection::two_sided : ApproxDirection::at_most;
      else dir = dom.lower.at(j) ? ApproxDirection::two_sided : ApproxDirection::at_least;
      v = best_approx(a, max_den, dir);
      const Rational delta = v - a;
      if (sgn(delta) > 0) rhs += delta * *dom.upper.at(j);
      else if (sgn(delta) < 0) rhs += delta * *dom.lower.at(j);
    }
    if (sgn(v) != 0) coefs[j] = v;
  }
  cut.coefficients = std::move(coefs);
  cut.rhs = best_approx(rhs, max_den, ApproxDirection::at_least);
  cut.denominator_limited = true;
  return cut;
}

}  // namespace exactcuts
