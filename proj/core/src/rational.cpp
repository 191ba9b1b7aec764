#include "exactcuts/rational.hpp"

#include <cmath>
#include <stdexcept>

namespace exactcuts {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (c < '0' || c > '9') return false;
  return true;
}

Integer parse_integer(std::string_view s) {
  return Integer(std::string(s), 10);
}

Rational pow10(long e) {
  Integer p;
  mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(e < 0 ? -e : e));
  return e < 0 ? Rational(Integer(1), p) : Rational(p);
}

}  // namespace

std::optional<Rational> try_parse_rational(std::string_view text) {
  if (text.empty()) return std::nullopt;
  bool negative = false;
  if (text.front() == '+' || text.front() == '-') {
    negative = text.front() == '-';
    text.remove_prefix(1);
  }
  Rational result;
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    auto num = text.substr(0, slash);
    auto den = text.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) return std::nullopt;
    Integer q = parse_integer(den);
    if (q == 0) return std::nullopt;
    result = Rational(parse_integer(num), q);
    result.canonicalize();
  } else {
    std::string_view mant = text;
    long exponent = 0;
    if (auto e = text.find_first_of("eE"); e != std::string_view::npos) {
      mant = text.substr(0, e);
      auto es = text.substr(e + 1);
      bool eneg = false;
      if (!es.empty() && (es.front() == '+' || es.front() == '-')) {
        eneg = es.front() == '-';
        es.remove_prefix(1);
      }
      if (!all_digits(es) || es.size() > 6) return std::nullopt;
      exponent = std::stol(std::string(es));
      if (eneg) exponent = -exponent;
    }
    std::string_view ip = mant, fp;
    if (auto dot = mant.find('.'); dot != std::string_view::npos) {
      ip = mant.substr(0, dot);
      fp = mant.substr(dot + 1);
      if (ip.empty() && fp.empty()) return std::nullopt;
      if (!ip.empty() && !all_digits(ip)) return std::nullopt;
      if (!fp.empty() && !all_digits(fp)) return std::nullopt;
    } else if (!all_digits(ip)) {
      return std::nullopt;
    }
    std::string digits = std::string(ip) + std::string(fp);
    result = Rational(parse_integer(digits));
    exponent -= static_cast<long>(fp.size());
    if (exponent != 0) result *= pow10(exponent);
  }
  if (negative) result = -result;
  return result;
}

Rational parse_rational(std::string_view text) {
  auto r = try_parse_rational(text);
  if (!r) throw std::invalid_argument("malformed rational literal '" + std::string(text) + "'");
  return *r;
}

std::string to_string(const Rational& r) { return r.get_str(10); }
std::string to_string(const Integer& z) { return z.get_str(10); }

Integer floor_of(const Rational& r) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  return q;
}

Integer ceil_of(const Rational& r) {
  Integer q;
  mpz_cdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  return q;
}

bool is_integer(const Rational& r) { return r.get_den() == 1; }

Rational frac_of(const Rational& r) { return r - Rational(floor_of(r)); }

Rational to_rational(double v) {
  if (!std::isfinite(v)) throw std::domain_error("to_rational: non-finite double");
  return Rational(v);
}

double to_double(const Rational& r) {
  // mpq_get_d truncates; good enough for heuristic use.
  return r.get_d();
}

}  // namespace exactcuts
