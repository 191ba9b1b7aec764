#include "exactcuts/directed_rounding.hpp"

#include <cfloat>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace exactcuts {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
// Below this magnitude the error-free transforms for * and / can lose bits.
constexpr double kTiny = 0x1p-960;
constexpr double kHuge = 0x1p+1000;

double nonneg_zero(double v) { return v == 0.0 ? 0.0 : v; }

// Positive x only. Returns the two neighbours in F around x, with `exact`
// set when x itself lies in F. Saturates at DBL_MAX / +inf.
struct Bracket {
  double down;
  double up;
};

Bracket bracket_positive(const Rational& x) {
  const mpz_srcptr p = x.get_num_mpz_t();
  const mpz_srcptr q = x.get_den_mpz_t();
  long e = static_cast<long>(mpz_sizeinbase(p, 2)) - static_cast<long>(mpz_sizeinbase(q, 2));
  // Fix e so that 2^e <= x < 2^(e+1).
  Integer lhs(x.get_num()), rhs(x.get_den());
  if (e >= 0)
    mpz_mul_2exp(rhs.get_mpz_t(), rhs.get_mpz_t(), static_cast<unsigned long>(e));
  else
    mpz_mul_2exp(lhs.get_mpz_t(), lhs.get_mpz_t(), static_cast<unsigned long>(-e));
  if (lhs < rhs) --e;

  if (e > 1023) return {DBL_MAX, kInf};

  const long k = std::max(e - 52, -1074L);
  Integer num(x.get_num()), den(x.get_den());
  if (k >= 0)
    mpz_mul_2exp(den.get_mpz_t(), den.get_mpz_t(), static_cast<unsigned long>(k));
  else
    mpz_mul_2exp(num.get_mpz_t(), num.get_mpz_t(), static_cast<unsigned long>(-k));
  Integer m, rem;
  mpz_fdiv_qr(m.get_mpz_t(), rem.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  const double lo = std::ldexp(m.get_d(), static_cast<int>(k));
  if (rem == 0) return {lo, lo};
  Integer m1 = m + 1;
  return {lo, std::ldexp(m1.get_d(), static_cast<int>(k))};
}

[[noreturn]] void indeterminate(const char* what) {
  throw std::logic_error(std::string("directed rounding: indeterminate form in ") + what);
}

double inf_add(double a, double b) {
  if (std::isinf(a) && std::isinf(b) && (a > 0) != (b > 0)) indeterminate("addition");
  return std::isinf(a) ? a : b;
}

double inf_mul(double a, double b) {
  if (a == 0.0 || b == 0.0) indeterminate("multiplication");
  return std::signbit(a) != std::signbit(b) ? -kInf : kInf;
}

void check_div(double a, double b) {
  if (std::isnan(a) || std::isnan(b)) indeterminate("division");
  if (b == 0.0) indeterminate("division by zero");
  if (std::isinf(a) && std::isinf(b)) indeterminate("division");
}

double div_special(double a, double b) {
  // Exactly one of a, b is infinite here.
  if (std::isinf(b)) return 0.0;
  return std::signbit(a) != std::signbit(b) ? -kInf : kInf;
}

}  // namespace

double round_up(const Rational& x) {
  const int s = sgn(x);
  if (s == 0) return 0.0;
  if (s > 0) return bracket_positive(x).up;
  return nonneg_zero(-bracket_positive(-x).down);
}

double round_down(const Rational& x) {
  const int s = sgn(x);
  if (s == 0) return 0.0;
  if (s > 0) return bracket_positive(x).down;
  return -bracket_positive(-x).up;
}

bool is_representable(const Rational& x) {
  if (sgn(x) == 0) return true;
  auto b = bracket_positive(abs(x));
  return b.down == b.up;
}

namespace reference {

double safe_add_up(double a, double b) {
  if (std::isnan(a) || std::isnan(b)) indeterminate("addition");
  if (std::isinf(a) || std::isinf(b)) return inf_add(a, b);
  return round_up(Rational(a) + Rational(b));
}

double safe_add_down(double a, double b) {
  if (std::isnan(a) || std::isnan(b)) indeterminate("addition");
  if (std::isinf(a) || std::isinf(b)) return inf_add(a, b);
  return round_down(Rational(a) + Rational(b));
}

double safe_mul_up(double a, double b) {
  if (std::isnan(a) || std::isnan(b)) indeterminate("multiplication");
  if (std::isinf(a) || std::isinf(b)) return inf_mul(a, b);
  return round_up(Rational(a) * Rational(b));
}

double safe_mul_down(double a, double b) {
  if (std::isnan(a) || std::isnan(b)) indeterminate("multiplication");
  if (std::isinf(a) || std::isinf(b)) return inf_mul(a, b);
  return round_down(Rational(a) * Rational(b));
}

double safe_div_up(double a, double b) {
  check_div(a, b);
  if (std::isinf(a) || std::isinf(b)) return div_special(a, b);
  return round_up(Rational(a) / Rational(b));
}

double safe_div_down(double a, double b) {
  check_div(a, b);
  if (std::isinf(a) || std::isinf(b)) return div_special(a, b);
  return round_down(Rational(a) / Rational(b));
}

}  // namespace reference

// Fast paths: round-to-nearest result plus an exact error term tells which
// neighbour the directed result is.

double safe_add_up(double a, double b) {
  const double s = a + b;
  if (!std::isfinite(s)) return reference::safe_add_up(a, b);
  const double bb = s - a;
  const double err = (a - (s - bb)) + (b - bb);
  if (err > 0) return std::nextafter(s, kInf);
  return nonneg_zero(s);
}

double safe_add_down(double a, double b) {
  const double s = a + b;
  if (!std::isfinite(s)) return reference::safe_add_down(a, b);
  const double bb = s - a;
  const double err = (a - (s - bb)) + (b - bb);
  if (err < 0) return nonneg_zero(std::nextafter(s, -kInf));
  return nonneg_zero(s);
}

double safe_mul_up(double a, double b) {
  const double p = a * b;
  const double ap = std::fabs(p);
  if (!std::isfinite(p) || (ap < kTiny && a != 0.0 && b != 0.0)) return reference::safe_mul_up(a, b);
  const double err = std::fma(a, b, -p);
  if (err > 0) return std::nextafter(p, kInf);
  return nonneg_zero(p);
}

double safe_mul_down(double a, double b) {
  const double p = a * b;
  const double ap = std::fabs(p);
  if (!std::isfinite(p) || (ap < kTiny && a != 0.0 && b != 0.0)) return reference::safe_mul_down(a, b);
  const double err = std::fma(a, b, -p);
  if (err < 0) return nonneg_zero(std::nextafter(p, -kInf));
  return nonneg_zero(p);
}

namespace {
// Sign of (a/b - q) computed from the exact remainder a - q*b.
int div_error_sign(double a, double b, double q) {
  const double r = std::fma(-q, b, a);
  if (r == 0) return 0;
  return (r > 0) == (b > 0) ? 1 : -1;
}

bool div_fast_ok(double a, double b, double q) {
  if (!std::isfinite(a) || !std::isfinite(b) || !std::isfinite(q) || b == 0.0) return false;
  if (a == 0.0) return true;
  const double aa = std::fabs(a), ab = std::fabs(b), aq = std::fabs(q);
  return aa > kTiny && aa < kHuge && ab > kTiny && ab < kHuge && aq > kTiny && aq < kHuge;
}
}  // namespace

double safe_div_up(double a, double b) {
  const double q = a / b;
  if (!div_fast_ok(a, b, q)) return reference::safe_div_up(a, b);
  if (div_error_sign(a, b, q) > 0) return std::nextafter(q, kInf);
  return nonneg_zero(q);
}

double safe_div_down(double a, double b) {
  const double q = a / b;
  if (!div_fast_ok(a, b, q)) return reference::safe_div_down(a, b);
  if (div_error_sign(a, b, q) < 0) return nonneg_zero(std::nextafter(q, -kInf));
  return nonneg_zero(q);
}

double safe_sum_up(std::span<const double> terms) {
  if (terms.empty()) return 0.0;
  double acc = terms.back();
  for (std::size_t i = terms.size() - 1; i-- > 0;) acc = safe_add_up(terms[i], acc);
  return nonneg_zero(acc);
}

double safe_sum_down(std::span<const double> terms) {
  if (terms.empty()) return 0.0;
  double acc = terms.back();
  for (std::size_t i = terms.size() - 1; i-- > 0;) acc = safe_add_down(terms[i], acc);
  return nonneg_zero(acc);
}

}  // namespace exactcuts
