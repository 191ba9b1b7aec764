#pragma once

#include "exactcuts/rational.hpp"

#include <optional>
#include <vector>

namespace exactcuts {

enum class ApproxDirection { two_sided, at_most, at_least };

// Floor-based expansion [a0; a1, a2, ...] of r; a0 may be negative.
std::vector<Integer> continued_fraction(const Rational& r);

struct Fraction {
  Integer p;
  Integer q;
  Rational value() const {
    Rational r(p, q);
    r.canonicalize();
    return r;
  }
};

// p_i / q_i for each partial quotient.
std::vector<Fraction> convergents(const Rational& r);

// Best approximation of r with denominator <= max_den. two_sided breaks
// distance ties toward the smaller denominator.
Rational best_approx(const Rational& r, const Integer& max_den, ApproxDirection dir);

// First convergent within `tol` of r whose denominator is <= max_den.
std::optional<Fraction> convergent_within(const Rational& r, const Rational& tol, const Integer& max_den);

}  // namespace exactcuts
