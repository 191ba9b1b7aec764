#pragma once

#include "exactcuts/rational.hpp"

#include <span>

namespace exactcuts {

// Smallest binary64 value >= x (largest <= x for round_down). Values already
// in F are fixed points. Out-of-range magnitudes saturate: round_up of a value
// above DBL_MAX is +inf, round_down of it is DBL_MAX (mirrored for negatives).
double round_up(const Rational& x);
double round_down(const Rational& x);
bool is_representable(const Rational& x);

// Directed pairwise operations on binary64 values, possibly infinite.
// Indeterminate forms (inf - inf, 0 * inf, inf / inf, x / 0) throw
// std::logic_error. Zero results are always +0.
double safe_add_up(double a, double b);
double safe_add_down(double a, double b);
double safe_mul_up(double a, double b);
double safe_mul_down(double a, double b);
double safe_div_up(double a, double b);
double safe_div_down(double a, double b);

// Right-to-left fold: sum(t0..tn) = t0 (+) sum(t1..tn); empty sum is 0.
double safe_sum_up(std::span<const double> terms);
double safe_sum_down(std::span<const double> terms);

namespace reference {
// Exact-then-round implementations; the fast versions above must agree bit
// for bit with these.
double safe_add_up(double a, double b);
double safe_add_down(double a, double b);
double safe_mul_up(double a, double b);
double safe_mul_down(double a, double b);
double safe_div_up(double a, double b);
double safe_div_down(double a, double b);
}  // namespace reference

}  // namespace exactcuts
