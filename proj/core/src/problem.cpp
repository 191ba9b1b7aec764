#include "exactcuts/problem.hpp"

#include <fstream>
#include <sstream>
#include <unordered_set>

namespace exactcuts {

const char* sense_token(Sense s) {
  switch (s) {
    case Sense::le: return "<=";
    case Sense::ge: return ">=";
    case Sense::eq: return "=";
  }
  return "?";
}

ParseError::ParseError(int line, const std::string& what)
    : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

std::optional<int> Problem::find_variable(const std::string& name) const {
  for (std::size_t j = 0; j < variables.size(); ++j)
    if (variables[j].name == name) return static_cast<int>(j);
  return std::nullopt;
}

namespace {

struct LineReader {
  std::istream& in;
  int lineno = 0;

  // Next line with comments stripped. `keep_blank` returns blank lines too.
  bool next(std::vector<std::string>& toks, bool keep_blank) {
    std::string line;
    while (std::getline(in, line)) {
      ++lineno;
      if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
      std::istringstream ss(line);
      toks.clear();
      for (std::string t; ss >> t;) toks.push_back(t);
      if (!toks.empty() || keep_blank) return true;
    }
    return false;
  }
};

Rational literal(const std::string& tok, int line) {
  auto r = try_parse_rational(tok);
  if (!r) throw ParseError(line, "bad rational '" + tok + "'");
  return *r;
}

long count_field(const std::vector<std::string>& t, const char* kw, int line) {
  if (t.size() != 2 || t[0] != kw) throw ParseError(line, std::string("expected '") + kw + " <count>'");
  auto r = try_parse_rational(t[1]);
  if (!r || !is_integer(*r) || sgn(*r) < 0) throw ParseError(line, "bad count '" + t[1] + "'");
  return r->get_num().get_si();
}

void add_term(SparseVec& v, int idx, const Rational& c, int line) {
  if (v.count(idx)) throw ParseError(line, "duplicate coefficient for a variable");
  if (sgn(c) != 0) v.emplace(idx, c);
}

}  // namespace

Problem parse_problem(std::istream& in) {
  LineReader rd{in};
  std::vector<std::string> t;
  Problem p;

  if (!rd.next(t, false)) throw ParseError(rd.lineno, "empty input");
  const long n = count_field(t, "VAR", rd.lineno);
  std::unordered_set<std::string> names;
  for (long j = 0; j < n; ++j) {
    if (!rd.next(t, false)) throw ParseError(rd.lineno, "unexpected end of VAR section");
    if (t.size() != 4) throw ParseError(rd.lineno, "expected '<name> <lower> <upper> <int|cont>'");
    Variable v;
    v.name = t[0];
    if (!names.insert(v.name).second) throw ParseError(rd.lineno, "duplicate variable '" + v.name + "'");
    if (t[1] != "-inf") v.lower = literal(t[1], rd.lineno);
    if (t[2] != "+inf" && t[2] != "inf") v.upper = literal(t[2], rd.lineno);
    if (t[3] == "int") v.is_integer = true;
    else if (t[3] != "cont") throw ParseError(rd.lineno, "variable type must be int or cont");
    if (v.is_integer) {
      if (v.lower) v.lower = Rational(ceil_of(*v.lower));
      if (v.upper) v.upper = Rational(floor_of(*v.upper));
    }
    if (v.lower && v.upper && *v.lower > *v.upper)
      throw ParseError(rd.lineno, "inconsistent bounds for '" + v.name + "'");
    p.variables.push_back(std::move(v));
  }
  auto var_index = [&](const std::string& name, int line) {
    auto j = p.find_variable(name);
    if (!j) throw ParseError(line, "unknown variable '" + name + "'");
    return *j;
  };

  if (!rd.next(t, false) || t.size() != 2 || t[0] != "OBJ" || t[1] != "min")
    throw ParseError(rd.lineno, "expected 'OBJ min'");
  bool have_con_header = false;
  while (rd.next(t, true)) {
    if (t.empty()) break;
    if (t[0] == "CON") {
      have_con_header = true;
      break;
    }
    if (t.size() != 2) throw ParseError(rd.lineno, "expected '<name> <coef>' in OBJ");
    add_term(p.objective, var_index(t[0], rd.lineno), literal(t[1], rd.lineno), rd.lineno);
  }
  if (!have_con_header && !rd.next(t, false)) throw ParseError(rd.lineno, "missing CON section");
  const long m = count_field(t, "CON", rd.lineno);
  std::unordered_set<std::string> row_names;
  for (long i = 0; i < m; ++i) {
    if (!rd.next(t, false)) throw ParseError(rd.lineno, "unexpected end of CON section");
    if (t.size() < 3 || (t.size() - 3) % 2 != 0)
      throw ParseError(rd.lineno, "expected '<name> <sense> <rhs> {<var> <coef>}*'");
    Row r;
    r.name = t[0];
    if (!row_names.insert(r.name).second) throw ParseError(rd.lineno, "duplicate row '" + r.name + "'");
    if (t[1] == "<=") r.sense = Sense::le;
    else if (t[1] == ">=") r.sense = Sense::ge;
    else if (t[1] == "=") r.sense = Sense::eq;
    else throw ParseError(rd.lineno, "bad sense '" + t[1] + "'");
    r.rhs = literal(t[2], rd.lineno);
    for (std::size_t k = 3; k < t.size(); k += 2)
      add_term(r.coefficients, var_index(t[k], rd.lineno), literal(t[k + 1], rd.lineno), rd.lineno);
    p.rows.push_back(std::move(r));
  }
  if (rd.next(t, false)) throw ParseError(rd.lineno, "trailing content after CON section");
  return p;
}

Problem parse_problem_string(const std::string& text) {
  std::istringstream in(text);
  return parse_problem(in);
}

Problem read_problem_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  return parse_problem(in);
}

std::string write_problem(const Problem& p) {
  std::ostringstream out;
  out << "VAR " << p.variables.size() << '\n';
  for (const auto& v : p.variables) {
    out << v.name << ' ' << (v.lower ? to_string(*v.lower) : "-inf") << ' '
        << (v.upper ? to_string(*v.upper) : "+inf") << ' ' << (v.is_integer ? "int" : "cont") << '\n';
  }
  out << "OBJ min\n";
  for (const auto& [j, c] : p.objective) out << p.variables[j].name << ' ' << to_string(c) << '\n';
  out << "\nCON " << p.rows.size() << '\n';
  for (const auto& r : p.rows) {
    out << r.name << ' ' << sense_token(r.sense) << ' ' << to_string(r.rhs);
    for (const auto& [j, c] : r.coefficients) out << ' ' << p.variables[j].name << ' ' << to_string(c);
    out << '\n';
  }
  return out.str();
}

std::vector<NormalizedRow> normalize_rows(const Problem& p) {
  std::vector<NormalizedRow> out;
  auto negated = [](const SparseVec& v) {
    SparseVec n;
    for (const auto& [j, c] : v) n.emplace(j, -c);
    return n;
  };
  for (std::size_t i = 0; i < p.rows.size(); ++i) {
    const Row& r = p.rows[i];
    const int o = static_cast<int>(i);
    if (r.sense != Sense::ge) out.push_back({r.coefficients, r.rhs, o, 1});
    if (r.sense != Sense::le) out.push_back({negated(r.coefficients), -r.rhs, o, -1});
  }
  return out;
}

bool check_assumption_bounds(const Problem& p, const std::set<int>& support) {
  for (int j : support)
    if (!p.variables.at(j).lower && !p.variables.at(j).upper) return false;
  return true;
}

Rational dot(const SparseVec& a, const std::vector<Rational>& x) {
  Rational s;
  for (const auto& [j, c] : a) s += c * x[j];
  return s;
}

bool satisfies_row(const Row& r, const std::vector<Rational>& x) {
  const Rational lhs = dot(r.coefficients, x);
  switch (r.sense) {
    case Sense::le: return lhs <= r.rhs;
    case Sense::ge: return lhs >= r.rhs;
    case Sense::eq: return lhs == r.rhs;
  }
  return false;
}

bool within_bounds(const Problem& p, const std::vector<Rational>& x) {
  if (x.size() != p.variables.size()) return false;
  for (std::size_t j = 0; j < x.size(); ++j) {
    const auto& v = p.variables[j];
    if (v.lower && x[j] < *v.lower) return false;
    if (v.upper && x[j] > *v.upper) return false;
    if (v.is_integer && !is_integer(x[j])) return false;
  }
  return true;
}

bool satisfies(const Problem& p, const std::vector<Rational>& x) {
  if (!within_bounds(p, x)) return false;
  for (const auto& r : p.rows)
    if (!satisfies_row(r, x)) return false;
  return true;
}

Rational objective_value(const Problem& p, const std::vector<Rational>& x) { return dot(p.objective, x); }

void enumerate_feasible(const Problem& p, long grid_denominator,
                        const std::function<bool(const std::vector<Rational>&)>& visit, std::uint64_t cap) {
  if (grid_denominator < 1) throw std::invalid_argument("grid denominator must be positive");
  const std::size_t n = p.variables.size();
  std::vector<Integer> lo(n), hi(n);
  std::vector<Rational> step(n);
  Integer total = 1;
  for (std::size_t j = 0; j < n; ++j) {
    const auto& v = p.variables[j];
    if (!v.lower || !v.upper) throw OracleUnavailable("variable '" + v.name + "' is unbounded");
    step[j] = v.is_integer ? Rational(1) : Rational(1, grid_denominator);
    // Grid indices k with lower <= k*step <= upper.
    lo[j] = ceil_of(*v.lower / step[j]);
    hi[j] = floor_of(*v.upper / step[j]);
    if (hi[j] < lo[j]) return;
    total *= hi[j] - lo[j] + 1;
    if (total > Integer(std::to_string(cap))) throw OracleUnavailable("enumeration grid exceeds cap");
  }
  std::vector<Integer> k = lo;
  std::vector<Rational> x(n);
  for (std::size_t j = 0; j < n; ++j) x[j] = Rational(k[j]) * step[j];
  while (true) {
    bool ok = true;
    for (const auto& r : p.rows)
      if (!satisfies_row(r, x)) {
        ok = false;
        break;
      }
    if (ok && !visit(x)) return;
    std::size_t j = 0;
    for (; j < n; ++j) {
      if (k[j] < hi[j]) {
        ++k[j];
        x[j] = Rational(k[j]) * step[j];
        break;
      }
      k[j] = lo[j];
      x[j] = Rational(k[j]) * step[j];
    }
    if (j == n) return;
  }
}

std::vector<std::vector<Rational>> enumerate_feasible(const Problem& p, long grid_denominator, std::uint64_t cap) {
  std::vector<std::vector<Rational>> out;
  enumerate_feasible(p, grid_denominator, [&](const std::vector<Rational>& x) {
    out.push_back(x);
    return true;
  }, cap);
  return out;
}

}  // namespace exactcuts
