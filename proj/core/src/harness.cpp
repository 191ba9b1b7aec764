#include "exactcuts/harness.hpp"

#include "json.hpp"

#include <cmath>
#include <iomanip>
#include <map>
#include <random>
#include <sstream>

namespace exactcuts {

namespace {

class Draw {
 public:
  explicit Draw(std::uint64_t seed) : rng_(seed) {}
  std::uint64_t below(std::uint64_t k) { return rng_() % k; }
  long between(long lo, long hi) { return lo + static_cast<long>(below(static_cast<std::uint64_t>(hi - lo + 1))); }
  bool chance(int num, int den) { return below(static_cast<std::uint64_t>(den)) < static_cast<std::uint64_t>(num); }

 private:
  std::mt19937_64 rng_;
};

// Small rationals, several of them outside binary64.
const std::vector<Rational>& coefficient_pool() {
  static const std::vector<Rational> pool = [] {
    std::vector<Rational> v;
    for (const char* s : {"1", "2", "3", "4", "5", "1/2", "3/2", "5/2", "1/3", "2/3", "4/3", "5/3", "1/7", "3/7",
                          "9/7", "3/4", "7/5"})
      v.push_back(parse_rational(s));
    return v;
  }();
  return pool;
}

Rational draw_coef(Draw& d) {
  const auto& pool = coefficient_pool();
  Rational c = pool[d.below(pool.size())];
  return d.chance(1, 2) ? Rational(-c) : c;
}

}  // namespace

Problem generate_instance(std::uint64_t seed, const GeneratorConfig& cfg) {
  Draw d(seed);
  Problem p;
  const int n = static_cast<int>(d.between(cfg.min_vars, cfg.max_vars));
  const int m = static_cast<int>(d.between(1, cfg.max_rows));
  std::vector<Rational> anchor(n);
  for (int j = 0; j < n; ++j) {
    Variable v;
    v.name = "x" + std::to_string(j);
    v.is_integer = !cfg.mixed || d.chance(2, 3);
    v.lower = Rational(0);
    Rational u(d.between(1, cfg.max_bound));
    if (!v.is_integer && d.chance(1, 2)) u += Rational(1, 2);
    v.upper = u;
    anchor[j] = Rational(d.between(0, floor_of(u).get_si()));
    p.variables.push_back(std::move(v));
  }
  for (int j = 0; j < n; ++j)
    if (d.chance(3, 4)) p.objective[j] = -Rational(d.between(1, 5)) + (d.chance(1, 3) ? Rational(1, 3) : Rational(0));
  for (int i = 0; i < m; ++i) {
    Row r;
    r.name = "r" + std::to_string(i);
    for (int j = 0; j < n; ++j)
      if (d.chance(2, 3)) r.coefficients[j] = draw_coef(d);
    if (r.coefficients.empty()) r.coefficients[static_cast<int>(d.below(n))] = draw_coef(d);
    const long kind = static_cast<long>(d.below(10));
    r.sense = kind < 7 ? Sense::le : (kind < 9 ? Sense::ge : Sense::eq);
    const Rational act = dot(r.coefficients, anchor);
    const bool unanchored = d.below(1000) < static_cast<std::uint64_t>(cfg.infeasible_share * 1000);
    Rational half_steps(d.between(0, 6), 2);
    half_steps.canonicalize();
    const Rational slack = half_steps + (d.chance(1, 3) ? Rational(1, 3) : Rational(0));
    if (unanchored) r.rhs = Rational(d.between(-8, 8));
    else if (r.sense == Sense::le) r.rhs = act + slack;
    else if (r.sense == Sense::ge) r.rhs = act - slack;
    else r.rhs = act;
    p.rows.push_back(std::move(r));
  }
  return p;
}

namespace {

using nlohmann::json;

json opt_rational(const std::optional<Rational>& r) { return r ? json(to_string(*r)) : json(nullptr); }

std::optional<Rational> read_rational(const json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return parse_rational(j.at(key).get<std::string>());
}

}  // namespace

RunRecord make_record(const std::string& instance, const SolveResult& r) {
  RunRecord rec;
  rec.instance = instance;
  rec.status = to_string(r.status);
  rec.objective = r.objective;
  rec.root_bound_no_cuts = r.stats.root_bound_no_cuts;
  rec.root_bound = r.stats.root_bound;
  rec.dual_bound = r.dual_bound;
  rec.nodes = r.node_count;
  rec.cuts = r.cuts_added;
  rec.time_total = r.stats.time_total;
  rec.time_exact_lp = r.stats.time_exact_lp;
  rec.time_float_lp = r.stats.time_float_lp;
  rec.time_separation = r.stats.time_separation;
  return rec;
}

std::string records_to_json(const std::vector<RunRecord>& records) {
  json arr = json::array();
  for (const auto& r : records) {
    arr.push_back({{"instance", r.instance},
                   {"status", r.status},
                   {"objective", opt_rational(r.objective)},
                   {"root_bound_no_cuts", opt_rational(r.root_bound_no_cuts)},
                   {"root_bound", opt_rational(r.root_bound)},
                   {"dual_bound", opt_rational(r.dual_bound)},
                   {"nodes", r.nodes},
                   {"cuts", r.cuts},
                   {"time_total", r.time_total},
                   {"time_exact_lp", r.time_exact_lp},
                   {"time_float_lp", r.time_float_lp},
                   {"time_separation", r.time_separation}});
  }
  return arr.dump(2) + "\n";
}

std::vector<RunRecord> records_from_json(const std::string& text) {
  std::vector<RunRecord> out;
  const json arr = json::parse(text);
  for (const auto& j : arr) {
    RunRecord r;
    r.instance = j.at("instance").get<std::string>();
    r.status = j.at("status").get<std::string>();
    r.objective = read_rational(j, "objective");
    r.root_bound_no_cuts = read_rational(j, "root_bound_no_cuts");
    r.root_bound = read_rational(j, "root_bound");
    r.dual_bound = read_rational(j, "dual_bound");
    r.nodes = j.value("nodes", 0L);
    r.cuts = j.value("cuts", 0);
    r.time_total = j.value("time_total", 0.0);
    r.time_exact_lp = j.value("time_exact_lp", 0.0);
    r.time_float_lp = j.value("time_float_lp", 0.0);
    r.time_separation = j.value("time_separation", 0.0);
    out.push_back(std::move(r));
  }
  return out;
}

double shifted_geometric_mean(const std::vector<double>& values, double shift) {
  if (values.empty()) return 0.0;
  double acc = 0;
  for (double v : values) acc += std::log(v + shift);
  return std::exp(acc / static_cast<double>(values.size())) - shift;
}

Report build_report(const std::vector<RunRecord>& records,
                    const std::vector<std::pair<std::string, ReferenceValue>>& references) {
  std::map<std::string, ReferenceValue> refs(references.begin(), references.end());
  Report rep;
  std::vector<double> times, nodes;
  for (const auto& r : records) {
    ReportRow row;
    row.instance = r.instance;
    row.status = r.status;
    row.objective = r.objective;
    row.nodes = r.nodes;
    row.cuts = r.cuts;
    row.time_total = r.time_total;
    row.time_exact_lp = r.time_exact_lp;
    row.time_float_lp = r.time_float_lp;
    std::optional<Rational> p = r.objective;
    if (auto it = refs.find(r.instance); it != refs.end()) {
      if (r.status != "time-limit" && it->second.status != r.status) {
        rep.warnings.push_back(r.instance + ": reference status '" + it->second.status + "' disagrees with '" +
                               r.status + "', excluded");
        continue;
      }
      p = it->second.objective;
    } else if (!references.empty()) {
      rep.warnings.push_back(r.instance + ": no reference value, instance skipped");
      continue;
    }
    times.push_back(r.time_total);
    nodes.push_back(static_cast<double>(r.nodes));
    if (p && r.root_bound_no_cuts) {
      const Rational& d1 = *r.root_bound_no_cuts;
      if (*p == d1) {
        rep.warnings.push_back(r.instance + ": no root gap (p = d1), gap closed undefined");
      } else {
        if (r.root_bound) row.gap_closed_root = gap_closed(*p, d1, *r.root_bound);
        if (r.dual_bound) row.gap_closed_limit = gap_closed(*p, d1, *r.dual_bound);
      }
    }
    rep.rows.push_back(std::move(row));
  }
  rep.sgm_time = shifted_geometric_mean(times, 1.0);
  rep.sgm_nodes = shifted_geometric_mean(nodes, 100.0);
  return rep;
}

namespace {
std::string opt_str(const std::optional<Rational>& r) { return r ? to_string(*r) : ""; }
std::string fixed(double v, int prec) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(prec) << v;
  return s.str();
}
}  // namespace

std::string report_csv(const Report& r, bool timings) {
  std::ostringstream out;
  out << "instance,status,objective,gap_closed_root,gap_closed_limit,nodes,cuts";
  if (timings) out << ",time_total,time_exact_lp,time_float_lp";
  out << '\n';
  for (const auto& row : r.rows) {
    out << row.instance << ',' << row.status << ',' << opt_str(row.objective) << ',' << opt_str(row.gap_closed_root)
        << ',' << opt_str(row.gap_closed_limit) << ',' << row.nodes << ',' << row.cuts;
    if (timings)
      out << ',' << fixed(row.time_total, 6) << ',' << fixed(row.time_exact_lp, 6) << ','
          << fixed(row.time_float_lp, 6);
    out << '\n';
  }
  return out.str();
}

std::string report_table(const Report& r, bool timings) {
  std::ostringstream out;
  out << std::left << std::setw(24) << "instance" << std::setw(12) << "status" << std::setw(14) << "objective"
      << std::setw(10) << "GC root" << std::setw(10) << "GC limit" << std::setw(8) << "nodes" << std::setw(6)
      << "cuts";
  if (timings) out << std::setw(10) << "time";
  out << '\n';
  auto gc = [](const std::optional<Rational>& g) { return g ? fixed(g->get_d(), 4) : std::string("-"); };
  for (const auto& row : r.rows) {
    out << std::left << std::setw(24) << row.instance << std::setw(12) << row.status << std::setw(14)
        << (row.objective ? to_string(*row.objective) : "-") << std::setw(10) << gc(row.gap_closed_root)
        << std::setw(10) << gc(row.gap_closed_limit) << std::setw(8) << row.nodes << std::setw(6) << row.cuts;
    if (timings) out << std::setw(10) << fixed(row.time_total, 4);
    out << '\n';
  }
  out << "shifted geometric mean nodes (shift 100): " << fixed(r.sgm_nodes, 2) << '\n';
  if (timings) out << "shifted geometric mean time (shift 1 s): " << fixed(r.sgm_time, 4) << '\n';
  for (const auto& w : r.warnings) out << "warning: " << w << '\n';
  return out.str();
}

}  // namespace exactcuts
