#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <string_view>

namespace exactcuts {

using Rational = mpq_class;
using Integer = mpz_class;

// Accepts "-3", "7/4", "0.125", "-1.5e-3". Throws std::invalid_argument.
Rational parse_rational(std::string_view text);
std::optional<Rational> try_parse_rational(std::string_view text);

// Canonical "p" or "p/q".
std::string to_string(const Rational& r);
std::string to_string(const Integer& z);

Integer floor_of(const Rational& r);
Integer ceil_of(const Rational& r);
bool is_integer(const Rational& r);
// r - floor(r), in [0, 1).
Rational frac_of(const Rational& r);

// Exact conversion of a finite double. Throws std::domain_error otherwise.
Rational to_rational(double v);
// Nearest double; only for heuristics (efficacy, float LP input).
double to_double(const Rational& r);

}  // namespace exactcuts
