#include "exactcuts/continued_fraction.hpp"

#include <stdexcept>

namespace exactcuts {

std::vector<Integer> continued_fraction(const Rational& r) {
  std::vector<Integer> out;
  Integer num = r.get_num(), den = r.get_den();
  while (den != 0) {
    Integer a, rem;
    mpz_fdiv_qr(a.get_mpz_t(), rem.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    out.push_back(a);
    num = den;
    den = rem;
  }
  return out;
}

std::vector<Fraction> convergents(const Rational& r) {
  std::vector<Fraction> out;
  Integer p2 = 0, q2 = 1, p1 = 1, q1 = 0;
  for (const auto& a : continued_fraction(r)) {
    Integer p = a * p1 + p2, q = a * q1 + q2;
    out.push_back({p, q});
    p2 = p1;
    q2 = q1;
    p1 = p;
    q1 = q;
  }
  return out;
}

Rational best_approx(const Rational& r, const Integer& max_den, ApproxDirection dir) {
  if (max_den < 1) throw std::invalid_argument("best_approx: denominator limit must be >= 1");
  if (r.get_den() <= max_den) return r;
  Integer p2 = 0, q2 = 1, p1 = 1, q1 = 0;
  for (const auto& a : continued_fraction(r)) {
    Integer p = a * p1 + p2, q = a * q1 + q2;
    if (q > max_den) {
      // Last admissible convergent and the largest admissible intermediate
      // fraction lie on opposite sides of r.
      const Rational conv(p1, q1);
      Integer j = (max_den - q2) / q1;
      const Rational inter(p2 + j * p1, q2 + j * q1);
      const bool conv_below = conv < r;
      const Rational& below = conv_below ? conv : inter;
      const Rational& above = conv_below ? inter : conv;
      switch (dir) {
        case ApproxDirection::at_most: return below;
        case ApproxDirection::at_least: return above;
        case ApproxDirection::two_sided: {
          const Rational db = r - below, da = above - r;
          if (db < da) return below;
          if (da < db) return above;
          return below.get_den() <= above.get_den() ? below : above;
        }
      }
    }
    p2 = p1;
    q2 = q1;
    p1 = p;
    q1 = q;
  }
  return r;  // unreachable: the final convergent is r itself
}

std::optional<Fraction> convergent_within(const Rational& r, const Rational& tol, const Integer& max_den) {
  for (const auto& c : convergents(r)) {
    if (c.q > max_den) return std::nullopt;
    if (abs(r - c.value()) <= tol) return c;
  }
  return std::nullopt;
}

}  // namespace exactcuts
