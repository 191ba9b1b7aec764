#include "exactcuts/simplex.hpp"

#include <cmath>
#include <stdexcept>

namespace exactcuts {

const char* to_string(LpStatus s) {
  switch (s) {
    case LpStatus::optimal: return "optimal";
    case LpStatus::infeasible: return "infeasible";
    case LpStatus::unbounded: return "unbounded";
    case LpStatus::iteration_limit: return "iteration-limit";
  }
  return "?";
}

LpRelaxation lp_from_problem(const Problem& p) {
  LpRelaxation lp;
  for (const auto& v : p.variables) {
    lp.lower.push_back(v.lower);
    lp.upper.push_back(v.upper);
  }
  for (auto& r : normalize_rows(p)) lp.rows.push_back({std::move(r.coefficients), r.rhs});
  lp.objective = p.objective;
  return lp;
}

namespace {

template <class S>
struct Arith;

template <>
struct Arith<Rational> {
  static constexpr bool exact = true;
  static Rational from(const Rational& r) { return r; }
  static bool pos(const Rational& v) { return sgn(v) > 0; }
  static bool neg(const Rational& v) { return sgn(v) < 0; }
  static bool less(const Rational& a, const Rational& b) { return a < b; }
  static bool tie(const Rational& a, const Rational& b) { return a == b; }
  static Rational clamp0(const Rational& v) { return v; }
};

template <>
struct Arith<double> {
  static constexpr bool exact = false;
  static constexpr double eps = 1e-9;
  static double from(const Rational& r) { return r.get_d(); }
  static bool pos(double v) { return v > eps; }
  static bool neg(double v) { return v < -eps; }
  static bool less(double a, double b) { return a < b - 1e-12; }
  static bool tie(double a, double b) { return std::fabs(a - b) <= 1e-12; }
  static double clamp0(double v) { return v < 0 ? 0.0 : v; }
};

template <class S>
class Engine {
  using A = Arith<S>;

 public:
  Engine(const LpRelaxation& lp, long iteration_limit) : lp_(lp) {
    n_ = lp.num_vars();
    m_ = lp.num_rows();
    for (int j = 0; j < n_; ++j) {
      cols_.emplace_back();
      lo_.push_back(lp.lower[j] ? std::optional<S>(A::from(*lp.lower[j])) : std::nullopt);
      hi_.push_back(lp.upper[j] ? std::optional<S>(A::from(*lp.upper[j])) : std::nullopt);
      if (lo_.back() && hi_.back() && A::less(*hi_.back(), *lo_.back())) empty_box_ = true;
    }
    for (int k = 0; k < m_; ++k) {
      for (const auto& [j, a] : lp.rows[k].coefficients) cols_[j].push_back({k, A::from(a)});
      b_.push_back(A::from(lp.rows[k].rhs));
    }
    for (int k = 0; k < m_; ++k) {
      cols_.push_back({{k, S(1)}});
      lo_.push_back(S(0));
      hi_.push_back(std::nullopt);
    }
    limit_ = iteration_limit > 0 ? iteration_limit : 20000 + 200L * (n_ + 2 * m_);
  }

  LpResult<S> run() {
    LpResult<S> res;
    if (empty_box_) {
      // Contradictory bounds; Farkas with y = 0 and a single bound pair is not
      // expressible through (y, d), so callers never build such LPs.
      throw std::logic_error("simplex: lower bound exceeds upper bound");
    }
    init();
    std::vector<S> phase1(cols_.size(), S(0));
    for (std::size_t c = n_ + m_; c < cols_.size(); ++c) phase1[c] = S(1);
    LpStatus st = iterate(phase1);
    res.iterations = iterations_;
    if (st != LpStatus::optimal) {
      res.status = st == LpStatus::unbounded ? LpStatus::iteration_limit : st;
      return res;
    }
    S infeas(0);
    for (std::size_t c = n_ + m_; c < cols_.size(); ++c) infeas += x_[c];
    const bool infeasible = A::exact ? A::pos(infeas) : infeas > 1e-7;
    if (infeasible) {
      res.status = LpStatus::infeasible;
      fill_duals(phase1, res);
      return res;
    }
    for (std::size_t c = n_ + m_; c < cols_.size(); ++c) {
      hi_[c] = S(0);
      if (pos_[c] < 0) x_[c] = S(0);
    }
    std::vector<S> cost(cols_.size(), S(0));
    for (const auto& [j, c] : lp_.objective) cost[j] = A::from(c);
    st = iterate(cost);
    res.iterations = iterations_;
    if (st != LpStatus::optimal) {
      res.status = st;
      return res;
    }
    res.status = LpStatus::optimal;
    fill_duals(cost, res);
    res.primal.assign(x_.begin(), x_.begin() + n_);
    S obj(0);
    for (const auto& [j, c] : lp_.objective) obj += A::from(c) * x_[j];
    res.objective_value = obj;
    return res;
  }

 private:
  void init() {
    x_.assign(cols_.size(), S(0));
    nb_upper_.assign(cols_.size(), false);
    for (int j = 0; j < n_; ++j) {
      if (lo_[j]) x_[j] = *lo_[j];
      else if (hi_[j]) {
        x_[j] = *hi_[j];
        nb_upper_[j] = true;
      }
    }
    head_.assign(m_, -1);
    pos_.assign(cols_.size(), -1);
    Binv_.assign(m_, std::vector<S>(m_, S(0)));
    for (int k = 0; k < m_; ++k) {
      S r = b_[k];
      for (int j = 0; j < n_; ++j)
        for (const auto& [row, a] : cols_[j])
          if (row == k) r -= a * x_[j];
      if (A::neg(r) || (A::exact && sgn_of(r) < 0)) {
        const int c = static_cast<int>(cols_.size());
        cols_.push_back({{k, S(-1)}});
        lo_.push_back(S(0));
        hi_.push_back(std::nullopt);
        x_.push_back(-r);
        nb_upper_.push_back(false);
        pos_.push_back(k);
        head_[k] = c;
        Binv_[k][k] = S(-1);
        art_row_.push_back(k);
      } else {
        head_[k] = n_ + k;
        pos_[n_ + k] = k;
        x_[n_ + k] = r;
        Binv_[k][k] = S(1);
      }
    }
  }

  static int sgn_of(const S& v) {
    if constexpr (A::exact) return sgn(v);
    else return v > 0 ? 1 : (v < 0 ? -1 : 0);
  }

  std::vector<S> duals(const std::vector<S>& cost) const {
    std::vector<S> y(m_, S(0));
    for (int r = 0; r < m_; ++r) {
      const S& cb = cost[head_[r]];
      if (sgn_of(cb) == 0) continue;
      for (int i = 0; i < m_; ++i) y[i] += cb * Binv_[r][i];
    }
    return y;
  }

  S reduced(const std::vector<S>& cost, const std::vector<S>& y, int j) const {
    S d = cost[j];
    for (const auto& [k, a] : cols_[j]) d -= y[k] * a;
    return d;
  }

  bool fixed(int j) const { return lo_[j] && hi_[j] && !A::less(*lo_[j], *hi_[j]); }

  LpStatus iterate(const std::vector<S>& cost) {
    while (true) {
      if (iterations_ >= limit_) return LpStatus::iteration_limit;
      if constexpr (!A::exact) {
        if (iterations_ > 0 && iterations_ % 64 == 0 && !refactor()) return LpStatus::iteration_limit;
      }
      const std::vector<S> y = duals(cost);
      int enter = -1;
      int dir = 0;
      for (int j = 0; j < static_cast<int>(cols_.size()); ++j) {
        if (pos_[j] >= 0 || fixed(j)) continue;
        const S d = reduced(cost, y, j);
        const bool can_up = !hi_[j] || !nb_upper_[j];
        const bool can_down = !lo_[j] || nb_upper_[j];
        if (A::neg(d) && can_up) dir = 1;
        else if (A::pos(d) && can_down) dir = -1;
        else continue;
        enter = j;
        break;
      }
      if (enter < 0) return LpStatus::optimal;
      ++iterations_;

      std::vector<S> alpha(m_, S(0));
      for (const auto& [k, a] : cols_[enter])
        for (int r = 0; r < m_; ++r) alpha[r] += Binv_[r][k] * a;

      std::optional<S> best;
      int best_id = -1;
      int best_row = -1;
      auto consider = [&](const S& t, int id, int row) {
        if (!best || A::less(t, *best) || (A::tie(t, *best) && id < best_id)) {
          best = t;
          best_id = id;
          best_row = row;
        }
      };
      for (int r = 0; r < m_; ++r) {
        const int h = head_[r];
        const S delta = dir > 0 ? S(-alpha[r]) : alpha[r];
        if (A::neg(delta) && lo_[h]) consider(A::clamp0(S((x_[h] - *lo_[h]) / S(-delta))), h, r);
        else if (A::pos(delta) && hi_[h]) consider(A::clamp0(S((*hi_[h] - x_[h]) / delta)), h, r);
      }
      if (lo_[enter] && hi_[enter]) consider(S(*hi_[enter] - *lo_[enter]), enter, -1);
      if (!best) return LpStatus::unbounded;

      const S t = *best;
      const S step = dir > 0 ? t : S(-t);
      x_[enter] += step;
      for (int r = 0; r < m_; ++r) x_[head_[r]] -= step * alpha[r];
      if (best_row < 0) {
        nb_upper_[enter] = dir > 0;
        x_[enter] = dir > 0 ? *hi_[enter] : *lo_[enter];
        continue;
      }
      const int leave = head_[best_row];
      const S delta = dir > 0 ? S(-alpha[best_row]) : alpha[best_row];
      if (A::neg(delta)) {
        x_[leave] = *lo_[leave];
        nb_upper_[leave] = false;
      } else {
        x_[leave] = *hi_[leave];
        nb_upper_[leave] = true;
      }
      pos_[leave] = -1;
      pos_[enter] = best_row;
      head_[best_row] = enter;
      nb_upper_[enter] = false;
      pivot(best_row, alpha);
    }
  }

  void pivot(int r, const std::vector<S>& alpha) {
    const S p = alpha[r];
    for (int i = 0; i < m_; ++i) Binv_[r][i] /= p;
    for (int q = 0; q < m_; ++q) {
      if (q == r || sgn_of(alpha[q]) == 0) continue;
      const S f = alpha[q];
      for (int i = 0; i < m_; ++i) Binv_[q][i] -= f * Binv_[r][i];
    }
  }

  // Float mode only: rebuild B^{-1} and x_B from scratch.
  bool refactor() {
    std::vector<std::vector<double>> B(m_, std::vector<double>(2 * m_, 0.0));
    for (int r = 0; r < m_; ++r) {
      for (const auto& [k, a] : cols_[head_[r]]) B[k][r] = static_cast<double>(a);
      B[r][m_ + r] = 1.0;
    }
    for (int c = 0; c < m_; ++c) {
      int piv = c;
      for (int r = c + 1; r < m_; ++r)
        if (std::fabs(B[r][c]) > std::fabs(B[piv][c])) piv = r;
      if (std::fabs(B[piv][c]) < 1e-12) return false;
      std::swap(B[piv], B[c]);
      const double d = B[c][c];
      for (auto& v : B[c]) v /= d;
      for (int r = 0; r < m_; ++r) {
        if (r == c || B[r][c] == 0.0) continue;
        const double f = B[r][c];
        for (int k = 0; k < 2 * m_; ++k) B[r][k] -= f * B[c][k];
      }
    }
    for (int r = 0; r < m_; ++r)
      for (int i = 0; i < m_; ++i) Binv_[r][i] = static_cast<S>(B[r][m_ + i]);
    std::vector<S> rhs = b_;
    for (int j = 0; j < static_cast<int>(cols_.size()); ++j) {
      if (pos_[j] >= 0) continue;
      for (const auto& [k, a] : cols_[j]) rhs[k] -= a * x_[j];
    }
    for (int r = 0; r < m_; ++r) {
      S v(0);
      for (int i = 0; i < m_; ++i) v += Binv_[r][i] * rhs[i];
      x_[head_[r]] = v;
    }
    return true;
  }

  void fill_duals(const std::vector<S>& cost, LpResult<S>& res) const {
    res.dual = duals(cost);
    res.reduced_cost.resize(n_);
    for (int j = 0; j < n_; ++j) res.reduced_cost[j] = reduced(cost, res.dual, j);
    res.basis.resize(m_);
    for (int r = 0; r < m_; ++r) {
      const int h = head_[r];
      res.basis[r] = h >= n_ + m_ ? n_ + art_row_[h - n_ - m_] : h;
    }
    if (res.primal.empty()) res.primal.assign(x_.begin(), x_.begin() + n_);
  }

  const LpRelaxation& lp_;
  int n_ = 0, m_ = 0;
  bool empty_box_ = false;
  long limit_ = 0;
  long iterations_ = 0;
  std::vector<std::vector<std::pair<int, S>>> cols_;
  std::vector<std::optional<S>> lo_, hi_;
  std::vector<S> b_;
  std::vector<S> x_;
  std::vector<bool> nb_upper_;
  std::vector<int> head_;
  std::vector<int> pos_;
  std::vector<int> art_row_;
  std::vector<std::vector<S>> Binv_;
};

}  // namespace

LpResult<Rational> solve_exact(const LpRelaxation& lp, const SimplexOptions& opt) {
  return Engine<Rational>(lp, opt.iteration_limit).run();
}

LpResult<double> solve_float(const LpRelaxation& lp, const SimplexOptions& opt) {
  auto res = Engine<double>(lp, opt.iteration_limit).run();
  for (const auto& v : res.primal)
    if (!std::isfinite(v)) {
      res.status = LpStatus::iteration_limit;
      break;
    }
  return res;
}

Rational dual_bound(const LpRelaxation& lp, const std::vector<Rational>& y, const std::vector<Rational>& d) {
  Rational v;
  for (int k = 0; k < lp.num_rows(); ++k) v += y[k] * lp.rows[k].rhs;
  for (int j = 0; j < lp.num_vars(); ++j) {
    const int s = sgn(d[j]);
    if (s == 0) continue;
    const Bound& b = s > 0 ? lp.lower[j] : lp.upper[j];
    if (!b) throw std::logic_error("dual_bound: reduced cost needs an infinite bound");
    v += d[j] * *b;
  }
  return v;
}

std::optional<std::vector<double>> basis_inverse_row(const LpRelaxation& lp, const std::vector<int>& basis, int i) {
  const int m = lp.num_rows();
  const int n = lp.num_vars();
  if (static_cast<int>(basis.size()) != m || i < 0 || i >= m) return std::nullopt;
  // M = B^T: row r of M is column basis[r] of [A I].
  std::vector<std::vector<double>> M(m, std::vector<double>(m, 0.0));
  for (int r = 0; r < m; ++r) {
    const int c = basis[r];
    if (c < n) {
      for (int k = 0; k < m; ++k) {
        auto it = lp.rows[k].coefficients.find(c);
        if (it != lp.rows[k].coefficients.end()) M[r][k] = it->second.get_d();
      }
    } else {
      M[r][c - n] = 1.0;
    }
  }
  std::vector<double> rhs(m, 0.0);
  rhs[i] = 1.0;
  std::vector<int> perm(m);
  for (int c = 0; c < m; ++c) {
    int piv = c;
    for (int r = c + 1; r < m; ++r)
      if (std::fabs(M[r][c]) > std::fabs(M[piv][c])) piv = r;
    if (std::fabs(M[piv][c]) < 1e-12) return std::nullopt;
    std::swap(M[piv], M[c]);
    std::swap(rhs[piv], rhs[c]);
    for (int r = c + 1; r < m; ++r) {
      const double f = M[r][c] / M[c][c];
      if (f == 0.0) continue;
      for (int k = c; k < m; ++k) M[r][k] -= f * M[c][k];
      rhs[r] -= f * rhs[c];
    }
  }
  std::vector<double> y(m, 0.0);
  for (int r = m - 1; r >= 0; --r) {
    double s = rhs[r];
    for (int k = r + 1; k < m; ++k) s -= M[r][k] * y[k];
    y[r] = s / M[r][r];
  }
  for (double v : y)
    if (!std::isfinite(v)) return std::nullopt;
  return y;
}

}  // namespace exactcuts
