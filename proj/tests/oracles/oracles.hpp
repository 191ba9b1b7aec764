#pragma once

// Test-only reference implementations. They share types with the library but
// none of its algorithms.

#include "exactcuts/problem.hpp"
#include "exactcuts/rational.hpp"

#include <cfloat>
#include <cmath>
#include <functional>
#include <limits>
#include <span>
#include <stdexcept>
#include <vector>

namespace oracle {

using exactcuts::Integer;
using exactcuts::Rational;

inline Rational pow2(long k) {
  Integer one = 1;
  if (k >= 0) return Rational(Integer(one << static_cast<mp_bitcnt_t>(k)));
  Rational r(one, Integer(one << static_cast<mp_bitcnt_t>(-k)));
  return r;
}

inline Rational exact(double v) {
  Rational r(v);  // mpq from double is exact
  return r;
}

struct Bracket {
  double down;
  double up;
};

// Neighbouring binary64 values of x found by truncating its binary expansion
// to 53 significant bits (fewer for subnormals).
inline Bracket bracket(const Rational& x) {
  if (x == 0) return {0.0, 0.0};
  if (x < 0) {
    const Bracket b = bracket(Rational(-x));
    return {-b.up, b.down == 0 ? 0.0 : -b.down};
  }
  const Rational max_finite = exact(DBL_MAX);
  if (x > max_finite) return {DBL_MAX, std::numeric_limits<double>::infinity()};
  long e = static_cast<long>(mpz_sizeinbase(x.get_num_mpz_t(), 2)) -
           static_cast<long>(mpz_sizeinbase(x.get_den_mpz_t(), 2));
  while (pow2(e) > x) --e;
  while (pow2(e + 1) <= x) ++e;
  const long k = std::max(e - 52, -1074L);
  const Rational scaled = x / pow2(k);
  Integer m;
  mpz_fdiv_q(m.get_mpz_t(), scaled.get_num_mpz_t(), scaled.get_den_mpz_t());
  const double lo = std::ldexp(m.get_d(), static_cast<int>(k));
  if (Rational(m) * pow2(k) == x) return {lo, lo};
  const Integer m1 = m + 1;
  const Rational hi_exact = Rational(m1) * pow2(k);
  const double hi = hi_exact > max_finite ? std::numeric_limits<double>::infinity()
                                          : std::ldexp(m1.get_d(), static_cast<int>(k));
  return {lo, hi};
}

inline double round_up(const Rational& x) { return bracket(x).up; }
inline double round_down(const Rational& x) { return bracket(x).down; }

// Right-to-left fold, rounding after each pairwise addition.
inline double sum_up(std::span<const double> t) {
  if (t.empty()) return 0.0;
  double r = t.back();
  for (std::size_t i = t.size() - 1; i-- > 0;) r = round_up(exact(t[i]) + exact(r));
  return r == 0 ? 0.0 : r;
}

inline double sum_down(std::span<const double> t) {
  if (t.empty()) return 0.0;
  double r = t.back();
  for (std::size_t i = t.size() - 1; i-- > 0;) r = round_down(exact(t[i]) + exact(r));
  return r == 0 ? 0.0 : r;
}

inline Integer floor_div(const Integer& a, const Integer& b) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

inline Rational frac(const Integer& p, const Integer& q) {
  Rational r(p, q);
  r.canonicalize();
  return r;
}

enum class Dir { two_sided, at_most, at_least };

// Scans every denominator q <= M. two_sided keeps the first strict
// improvement, so ties go to the smaller q (then the smaller value).
inline Rational best_approx(const Rational& r, long M, Dir dir) {
  Rational best;
  bool have = false;
  Rational best_dist;
  for (long q = 1; q <= M; ++q) {
    const Integer pf = floor_div(r.get_num() * q, r.get_den());
    for (const Integer& p : {pf, Integer(pf + 1)}) {
      const Rational v = frac(p, Integer(q));
      if (dir == Dir::at_most && v > r) continue;
      if (dir == Dir::at_least && v < r) continue;
      const Rational dist = abs(v - r);
      if (!have || dist < best_dist) {
        best = v;
        best_dist = dist;
        have = true;
      }
    }
  }
  return best;
}

// Partial quotients by the Euclidean algorithm with floor division.
inline std::vector<Integer> partial_quotients(const Rational& r) {
  std::vector<Integer> a;
  Integer n = r.get_num(), d = r.get_den();
  while (d != 0) {
    const Integer q = floor_div(n, d);
    a.push_back(q);
    const Integer rem = n - q * d;
    n = d;
    d = rem;
  }
  return a;
}

// Exact Gauss-Jordan inverse; throws on a singular matrix.
inline std::vector<std::vector<Rational>> inverse(std::vector<std::vector<Rational>> a) {
  const std::size_t n = a.size();
  std::vector<std::vector<Rational>> inv(n, std::vector<Rational>(n, Rational(0)));
  for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && a[piv][c] == 0) ++piv;
    if (piv == n) throw std::domain_error("singular");
    std::swap(a[piv], a[c]);
    std::swap(inv[piv], inv[c]);
    const Rational s = a[c][c];
    for (std::size_t j = 0; j < n; ++j) {
      a[c][j] /= s;
      inv[c][j] /= s;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || a[r][c] == 0) continue;
      const Rational f = a[r][c];
      for (std::size_t j = 0; j < n; ++j) {
        a[r][j] -= f * a[c][j];
        inv[r][j] -= f * inv[c][j];
      }
    }
  }
  return inv;
}

inline bool row_holds(const exactcuts::Row& row, const std::vector<Rational>& x) {
  Rational lhs = 0;
  for (const auto& [j, a] : row.coefficients) lhs += a * x[static_cast<std::size_t>(j)];
  switch (row.sense) {
    case exactcuts::Sense::le: return lhs <= row.rhs;
    case exactcuts::Sense::ge: return lhs >= row.rhs;
    case exactcuts::Sense::eq: return lhs == row.rhs;
  }
  return false;
}

// Odometer over the grid of the bounding box; feasible points only.
inline void enumerate(const exactcuts::Problem& p, long grid_den,
                      const std::function<void(const std::vector<Rational>&)>& visit) {
  const std::size_t n = p.variables.size();
  std::vector<Rational> lo(n), step(n), hi(n), x(n);
  for (std::size_t j = 0; j < n; ++j) {
    const auto& v = p.variables[j];
    if (!v.lower || !v.upper) throw std::invalid_argument("oracle needs finite bounds");
    step[j] = v.is_integer ? Rational(1) : frac(Integer(1), Integer(grid_den));
    // first grid value >= lower
    const Rational k = *v.lower / step[j];
    Integer c = floor_div(k.get_num(), k.get_den());
    if (Rational(c) < k) c += 1;
    lo[j] = Rational(c) * step[j];
    hi[j] = *v.upper;
    x[j] = lo[j];
    if (lo[j] > hi[j]) return;
  }
  while (true) {
    bool ok = true;
    for (const auto& r : p.rows)
      if (!row_holds(r, x)) {
        ok = false;
        break;
      }
    if (ok) visit(x);
    std::size_t j = 0;
    for (; j < n; ++j) {
      x[j] += step[j];
      if (x[j] <= hi[j]) break;
      x[j] = lo[j];
    }
    if (j == n) return;
  }
}

inline std::vector<std::vector<Rational>> feasible_points(const exactcuts::Problem& p, long grid_den) {
  std::vector<std::vector<Rational>> out;
  enumerate(p, grid_den, [&](const std::vector<Rational>& x) { out.push_back(x); });
  return out;
}

inline Rational objective(const exactcuts::Problem& p, const std::vector<Rational>& x) {
  Rational v = 0;
  for (const auto& [j, c] : p.objective) v += c * x[static_cast<std::size_t>(j)];
  return v;
}

}  // namespace oracle
