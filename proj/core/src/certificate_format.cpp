#include "exactcuts/certificate_format.hpp"

#include <fstream>
#include <sstream>

namespace exactcuts::vipr {

const char* rule_token(RuleKind k) {
  switch (k) {
    case RuleKind::assumption: return "asm";
    case RuleKind::lin: return "lin";
    case RuleKind::rnd: return "rnd";
    case RuleKind::uns: return "uns";
    case RuleKind::weak: return "weak";
  }
  return "?";
}

CertParseError::CertParseError(int line, const std::string& what)
    : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

const Constraint& Certificate::at(int global_index) const {
  const int m = num_constraints();
  if (global_index < m) return constraints.at(global_index);
  return derivations.at(global_index - m).constraint;
}

std::optional<Sense> combine_sense(std::optional<Sense> acc, Sense s, int mult_sign, bool& first) {
  Sense term = s;
  if (s == Sense::le && mult_sign < 0) term = Sense::ge;
  else if (s == Sense::ge && mult_sign < 0) term = Sense::le;
  if (first) {
    first = false;
    return term;
  }
  if (!acc) return std::nullopt;
  if (*acc == Sense::eq) return term;
  if (term == Sense::eq || term == *acc) return acc;
  return std::nullopt;
}

Aggregate aggregate(const Certificate& c, const std::vector<Term>& terms) {
  return aggregate_with(terms, [&](int i) -> const Constraint& { return c.at(i); });
}

bool is_falsehood(const SparseVec& coefs, Sense sense, const Rational& rhs) {
  if (!coefs.empty()) return false;
  switch (sense) {
    case Sense::le: return sgn(rhs) < 0;
    case Sense::ge: return sgn(rhs) > 0;
    case Sense::eq: return sgn(rhs) != 0;
  }
  return false;
}

bool is_falsehood(const Constraint& c) { return is_falsehood(c.coefficients, c.sense, c.rhs); }

bool dominates(const Constraint& a, const Constraint& b) {
  if (is_falsehood(a)) return true;
  if (a.coefficients != b.coefficients) return false;
  switch (a.sense) {
    case Sense::eq:
      if (b.sense == Sense::eq) return a.rhs == b.rhs;
      return b.sense == Sense::le ? a.rhs <= b.rhs : a.rhs >= b.rhs;
    case Sense::le: return b.sense == Sense::le && a.rhs <= b.rhs;
    case Sense::ge: return b.sense == Sense::ge && a.rhs >= b.rhs;
  }
  return false;
}

namespace {

class Tokens {
 public:
  explicit Tokens(std::istream& in) {
    std::string line;
    int no = 0;
    while (std::getline(in, line)) {
      ++no;
      std::istringstream ss(line);
      std::string t;
      if (!(ss >> t)) continue;
      if (t[0] == '%' || t[0] == '#') continue;
      do {
        toks_.emplace_back(t, no);
      } while (ss >> t);
    }
    last_line_ = no;
  }

  bool done() const { return pos_ >= toks_.size(); }
  int line() const { return done() ? last_line_ : toks_[pos_].second; }

  std::string next(const char* what) {
    if (done()) throw CertParseError(last_line_, std::string("unexpected end of file, expected ") + what);
    return toks_[pos_++].first;
  }

  const std::string& peek() const {
    static const std::string empty;
    return done() ? empty : toks_[pos_].first;
  }

  void expect(const std::string& kw) {
    const int l = line();
    const std::string t = next(kw.c_str());
    if (t != kw) throw CertParseError(l, "expected '" + kw + "', got '" + t + "'");
  }

  Rational rational(const char* what) {
    const int l = line();
    const std::string t = next(what);
    auto r = try_parse_rational(t);
    if (!r) throw CertParseError(l, std::string("bad ") + what + " '" + t + "'");
    return *r;
  }

  long integer(const char* what, long lo, long hi) {
    const int l = line();
    const Rational r = rational(what);
    if (!is_integer(r) || r < lo || r > hi) throw CertParseError(l, std::string(what) + " out of range");
    return r.get_num().get_si();
  }

 private:
  std::vector<std::pair<std::string, int>> toks_;
  std::size_t pos_ = 0;
  int last_line_ = 0;
};

constexpr long kMaxCount = 100'000'000;

Sense parse_sense(Tokens& t) {
  const int l = t.line();
  const std::string s = t.next("sense");
  if (s == "L") return Sense::le;
  if (s == "G") return Sense::ge;
  if (s == "E") return Sense::eq;
  throw CertParseError(l, "bad sense '" + s + "'");
}

SparseVec parse_coefs(Tokens& t, int n, const SparseVec* objective) {
  if (objective && t.peek() == "OBJ") {
    t.next("OBJ");
    return *objective;
  }
  const long k = t.integer("nonzero count", 0, n);
  SparseVec v;
  for (long i = 0; i < k; ++i) {
    const int l = t.line();
    const int j = static_cast<int>(t.integer("variable index", 0, n - 1));
    const Rational c = t.rational("coefficient");
    if (v.count(j)) throw CertParseError(l, "duplicate variable index");
    if (sgn(c) != 0) v.emplace(j, c);
  }
  return v;
}

std::vector<Term> parse_terms(Tokens& t, int limit) {
  const long k = t.integer("term count", 0, kMaxCount);
  std::vector<Term> out;
  for (long i = 0; i < k; ++i) {
    const int idx = static_cast<int>(t.integer("reference index", 0, limit));
    out.push_back({idx, t.rational("multiplier")});
  }
  return out;
}

char sense_letter(Sense s) { return s == Sense::le ? 'L' : (s == Sense::ge ? 'G' : 'E'); }

void write_coefs(std::ostream& out, const SparseVec& v) {
  out << v.size();
  for (const auto& [j, c] : v) out << ' ' << j << ' ' << to_string(c);
}

void write_terms(std::ostream& out, const std::vector<Term>& terms) {
  out << terms.size();
  for (const auto& t : terms) out << ' ' << t.index << ' ' << to_string(t.multiplier);
}

}  // namespace

Certificate parse_certificate(std::istream& in) {
  Tokens t(in);
  Certificate c;
  t.expect("VER");
  {
    const int l = t.line();
    const std::string v = t.next("version");
    if (v.rfind("1.", 0) != 0) throw CertParseError(l, "unsupported version " + v);
  }
  t.expect("VAR");
  const int n = static_cast<int>(t.integer("variable count", 0, kMaxCount));
  for (int j = 0; j < n; ++j) c.variables.push_back(t.next("variable name"));
  t.expect("INT");
  const long ni = t.integer("integer count", 0, n);
  for (long i = 0; i < ni; ++i) c.integers.push_back(static_cast<int>(t.integer("integer index", 0, n - 1)));
  t.expect("OBJ");
  {
    const int l = t.line();
    const std::string s = t.next("objective sense");
    if (s != "min") throw CertParseError(l, "only 'min' objectives are supported");
  }
  c.objective = parse_coefs(t, n, nullptr);
  t.expect("CON");
  const int m = static_cast<int>(t.integer("constraint count", 0, kMaxCount));
  c.bound_constraints = static_cast<int>(t.integer("bound count", 0, m));
  for (int i = 0; i < m; ++i) {
    Constraint k;
    k.name = t.next("constraint name");
    k.sense = parse_sense(t);
    k.rhs = t.rational("rhs");
    k.coefficients = parse_coefs(t, n, &c.objective);
    c.constraints.push_back(std::move(k));
  }
  t.expect("RTP");
  {
    const int l = t.line();
    const std::string kind = t.next("RTP kind");
    if (kind == "infeas") {
      c.rtp.infeasible = true;
    } else if (kind == "range") {
      const std::string lo = t.next("lower bound"), hi = t.next("upper bound");
      if (lo != "-inf") {
        auto r = try_parse_rational(lo);
        if (!r) throw CertParseError(l, "bad RTP lower bound");
        c.rtp.lower = *r;
      }
      if (hi != "inf" && hi != "+inf") {
        auto r = try_parse_rational(hi);
        if (!r) throw CertParseError(l, "bad RTP upper bound");
        c.rtp.upper = *r;
      }
    } else {
      throw CertParseError(l, "RTP must be 'infeas' or 'range'");
    }
  }
  t.expect("SOL");
  const long ns = t.integer("solution count", 0, kMaxCount);
  for (long s = 0; s < ns; ++s) {
    Solution sol;
    sol.name = t.next("solution name");
    sol.values = parse_coefs(t, n, nullptr);
    c.solutions.push_back(std::move(sol));
  }
  t.expect("DER");
  const long nd = t.integer("derivation count", 0, kMaxCount);
  for (long d = 0; d < nd; ++d) {
    const int own = m + static_cast<int>(d);
    const int l = t.line();
    const long idx = t.integer("derivation index", 0, kMaxCount);
    if (idx != own) throw CertParseError(l, "derivation index " + std::to_string(idx) + " should be " + std::to_string(own));
    Derivation der;
    der.constraint.name = t.next("derivation name");
    der.constraint.sense = parse_sense(t);
    der.constraint.rhs = t.rational("rhs");
    der.constraint.coefficients = parse_coefs(t, n, &c.objective);
    const int rl = t.line();
    const std::string rule = t.next("rule");
    const int limit = own + kMaxCount;  // forward references are rejected by the checker
    if (rule == "asm") {
      der.rule = RuleKind::assumption;
    } else if (rule == "lin" || rule == "rnd" || rule == "weak") {
      der.rule = rule == "lin" ? RuleKind::lin : (rule == "rnd" ? RuleKind::rnd : RuleKind::weak);
      der.terms = parse_terms(t, limit);
      if (der.rule == RuleKind::weak) der.weak_coefficients = parse_coefs(t, n, nullptr);
    } else if (rule == "uns") {
      der.rule = RuleKind::uns;
      der.i1 = static_cast<int>(t.integer("uns index", 0, limit));
      der.a1 = static_cast<int>(t.integer("uns index", 0, limit));
      der.i2 = static_cast<int>(t.integer("uns index", 0, limit));
      der.a2 = static_cast<int>(t.integer("uns index", 0, limit));
    } else {
      throw CertParseError(rl, "unknown rule '" + rule + "'");
    }
    c.derivations.push_back(std::move(der));
  }
  if (!t.done()) throw CertParseError(t.line(), "trailing content after DER section");
  return c;
}

Certificate parse_certificate_string(const std::string& text) {
  std::istringstream in(text);
  return parse_certificate(in);
}

Certificate read_certificate_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  return parse_certificate(in);
}

std::string write_certificate(const Certificate& c) {
  std::ostringstream out;
  const int m = c.num_constraints();
  out << "VER 1.1\n";
  out << "VAR " << c.variables.size() << '\n';
  for (const auto& v : c.variables) out << v << '\n';
  out << "INT " << c.integers.size() << '\n';
  for (std::size_t i = 0; i < c.integers.size(); ++i) out << (i ? " " : "") << c.integers[i];
  if (!c.integers.empty()) out << '\n';
  out << "OBJ min\n";
  write_coefs(out, c.objective);
  out << '\n';
  out << "CON " << m << ' ' << c.bound_constraints << '\n';
  for (const auto& k : c.constraints) {
    out << k.name << ' ' << sense_letter(k.sense) << ' ' << to_string(k.rhs) << ' ';
    write_coefs(out, k.coefficients);
    out << '\n';
  }
  if (c.rtp.infeasible) out << "RTP infeas\n";
  else
    out << "RTP range " << (c.rtp.lower ? to_string(*c.rtp.lower) : "-inf") << ' '
        << (c.rtp.upper ? to_string(*c.rtp.upper) : "inf") << '\n';
  out << "SOL " << c.solutions.size() << '\n';
  for (const auto& s : c.solutions) {
    out << s.name << ' ';
    write_coefs(out, s.values);
    out << '\n';
  }
  out << "DER " << c.derivations.size() << '\n';
  for (std::size_t d = 0; d < c.derivations.size(); ++d) {
    const auto& der = c.derivations[d];
    const auto& k = der.constraint;
    out << m + static_cast<int>(d) << ' ' << k.name << ' ' << sense_letter(k.sense) << ' ' << to_string(k.rhs) << ' ';
    write_coefs(out, k.coefficients);
    out << ' ' << rule_token(der.rule);
    switch (der.rule) {
      case RuleKind::assumption: break;
      case RuleKind::lin:
      case RuleKind::rnd:
        out << ' ';
        write_terms(out, der.terms);
        break;
      case RuleKind::weak:
        out << ' ';
        write_terms(out, der.terms);
        out << ' ';
        write_coefs(out, der.weak_coefficients);
        break;
      case RuleKind::uns:
        out << ' ' << der.i1 << ' ' << der.a1 << ' ' << der.i2 << ' ' << der.a2;
        break;
    }
    out << '\n';
  }
  return out.str();
}

void write_certificate_file(const Certificate& c, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << write_certificate(c);
  if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

}  // namespace exactcuts::vipr
