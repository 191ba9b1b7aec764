#include "exactcuts/safe_cuts.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace exactcuts {

double efficacy(const SparseVec& a, const Rational& rhs, const std::vector<double>& x) {
  double act = 0, norm = 0;
  for (const auto& [j, c] : a) {
    const double v = c.get_d();
    act += v * x[j];
    norm += v * v;
  }
  if (norm == 0.0)
    return sgn(rhs) < 0 ? std::numeric_limits<double>::infinity() : -std::numeric_limits<double>::infinity();
  return (act - rhs.get_d()) / std::sqrt(norm);
}

namespace {

double parallelism(const SparseVec& a, const SparseVec& b) {
  double dot = 0, na = 0, nb = 0;
  for (const auto& [j, c] : a) {
    const double v = c.get_d();
    na += v * v;
    if (auto it = b.find(j); it != b.end()) dot += v * it->second.get_d();
  }
  for (const auto& [j, c] : b) nb += c.get_d() * c.get_d();
  if (na == 0.0 || nb == 0.0) return 0.0;
  return dot / std::sqrt(na * nb);
}

}  // namespace

std::vector<Cut> separate_gmi(const LpRelaxation& lp, const std::vector<bool>& is_integer,
                              const LpResult<double>& lp_result, const SeparatorConfig& cfg) {
  std::vector<Cut> found;
  if (lp_result.status != LpStatus::optimal) return found;
  const int n = lp.num_vars();
  const Domain dom = domain_of(lp, is_integer);
  const auto sides = choose_bound_sides(dom, lp_result.primal);
  std::map<int, std::optional<RelaxedRow>> relaxed;
  auto relaxed_row = [&](int k) -> const std::optional<RelaxedRow>& {
    auto it = relaxed.find(k);
    if (it != relaxed.end()) return it->second;
    std::optional<RelaxedRow> r;
    try {
      r = make_representable(lp.rows[k], dom, sides);
    } catch (const CutAbandoned&) {
    }
    return relaxed.emplace(k, std::move(r)).first->second;
  };

  for (int r = 0; r < static_cast<int>(lp_result.basis.size()); ++r) {
    const int h = lp_result.basis[r];
    if (h >= n || !is_integer[h]) continue;
    const double v = lp_result.primal[h];
    const double frac = v - std::floor(v);
    if (frac < cfg.f_min || frac > 1 - cfg.f_min) continue;
    auto lambda = basis_inverse_row(lp, lp_result.basis, r);
    if (!lambda) continue;
    double maxabs = 0;
    for (double l : *lambda) maxabs = std::max(maxabs, std::fabs(l));
    std::map<int, double> mult;
    std::map<int, RelaxedRow> rows;
    bool usable = true;
    for (int k = 0; k < lp.num_rows() && usable; ++k) {
      const double l = (*lambda)[k];
      if (std::fabs(l) <= 1e-12 * maxabs) continue;
      const auto& rr = relaxed_row(k);
      if (!rr) usable = false;
      else {
        mult[k] = l;
        rows.emplace(k, *rr);
      }
    }
    if (!usable || mult.empty()) continue;
    try {
      FRow frow = safe_aggregate(rows, mult, dom, sides);
      auto cut = safe_mir(frow, dom, cfg.f_min);
      if (!cut) continue;
      cut->frows = std::move(rows);
      cut->side_choice = sides;
      Cut c = substitute_slacks(std::move(*cut), dom, cfg.certificate_mode);
      if (cfg.scaling) c = scale_cut(std::move(c), dom);
      if (cfg.max_denominator > 0) c = limit_denominators(std::move(c), Integer(cfg.max_denominator), dom);
      c.efficacy = efficacy(c.coefficients, c.rhs, lp_result.primal);
      if (!(c.efficacy > cfg.min_efficacy)) continue;
      found.push_back(std::move(c));
    } catch (const CutAbandoned&) {
    }
  }

  std::stable_sort(found.begin(), found.end(), [](const Cut& a, const Cut& b) { return a.efficacy > b.efficacy; });
  std::vector<Cut> selected;
  for (auto& c : found) {
    if (static_cast<int>(selected.size()) >= cfg.max_cuts) break;
    bool parallel = false;
    for (const auto& s : selected)
      if (parallelism(c.coefficients, s.coefficients) > cfg.max_parallelism) parallel = true;
    if (!parallel) selected.push_back(std::move(c));
  }
  return selected;
}

}  // namespace exactcuts
