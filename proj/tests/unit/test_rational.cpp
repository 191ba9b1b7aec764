#include "doctest.h"
#include "exactcuts/rational.hpp"

#include <cmath>

using namespace exactcuts;

TEST_CASE("literal syntax") {
  CHECK(parse_rational("-3") == -3);
  CHECK(parse_rational("7/4") == Rational(7, 4));
  CHECK(parse_rational("14/8") == Rational(7, 4));
  CHECK(parse_rational("0.5") == Rational(1, 2));
  CHECK(parse_rational("0.125") == Rational(1, 8));
  CHECK(parse_rational("-1.5e-3") == Rational(-3, 2000));
  CHECK(parse_rational("+2") == 2);
  CHECK(parse_rational("1e3") == 1000);
  CHECK(parse_rational("1/3") == Rational(1, 3));
}

TEST_CASE("malformed literals") {
  for (const char* bad : {"", "x", "1/0", "1/", "/2", "1.2.3", "3/-4", "1e", "--1", "0x10", "inf", "nan"}) {
    CAPTURE(bad);
    CHECK_THROWS_AS(parse_rational(bad), std::invalid_argument);
    CHECK_FALSE(try_parse_rational(bad).has_value());
  }
}

TEST_CASE("canonical printing") {
  CHECK(to_string(parse_rational("6/4")) == "3/2");
  CHECK(to_string(parse_rational("-6/3")) == "-2");
  CHECK(to_string(Rational(0)) == "0");
  CHECK(to_string(Integer(-12)) == "-12");
  const Rational r = parse_rational("-22/7");
  CHECK(parse_rational(to_string(r)) == r);
}

TEST_CASE("floor, ceil and fractional part") {
  CHECK(floor_of(Rational(7, 2)) == 3);
  CHECK(ceil_of(Rational(7, 2)) == 4);
  CHECK(floor_of(Rational(-7, 2)) == -4);
  CHECK(ceil_of(Rational(-7, 2)) == -3);
  CHECK(floor_of(Rational(5)) == 5);
  CHECK(ceil_of(Rational(-5)) == -5);
  CHECK(frac_of(Rational(-7, 2)) == Rational(1, 2));
  CHECK(frac_of(Rational(-1, 3)) == Rational(2, 3));
  CHECK(frac_of(Rational(4)) == 0);
  CHECK(is_integer(parse_rational("6/3")));
  CHECK_FALSE(is_integer(Rational(1, 3)));
}

TEST_CASE("double conversion is exact") {
  CHECK(to_rational(0.1) == Rational(3602879701896397, Integer(1) << 55));
  CHECK(to_rational(-0.0) == 0);
  CHECK(to_rational(std::ldexp(1.0, -1074)) == Rational(1, Integer(1) << 1074));
  CHECK_THROWS_AS(to_rational(INFINITY), std::domain_error);
  CHECK_THROWS_AS(to_rational(NAN), std::domain_error);
  CHECK(to_double(Rational(1, 4)) == 0.25);
}
