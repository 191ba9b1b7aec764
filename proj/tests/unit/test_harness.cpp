#include "doctest.h"
#include "exactcuts/harness.hpp"

#include <cmath>

using namespace exactcuts;

namespace {
RunRecord rec(const std::string& name, const std::string& status, std::optional<Rational> obj,
              std::optional<Rational> d1, std::optional<Rational> d2, double time, long nodes) {
  RunRecord r;
  r.instance = name;
  r.status = status;
  r.objective = obj;
  r.root_bound_no_cuts = d1;
  r.root_bound = d2;
  r.dual_bound = obj;
  r.time_total = time;
  r.nodes = nodes;
  return r;
}
}  // namespace

TEST_CASE("shifted geometric mean") {
  CHECK(shifted_geometric_mean({1.0, 7.0}, 1.0) == doctest::Approx(3.0));
  CHECK(shifted_geometric_mean({}, 1.0) == 0.0);
  CHECK(shifted_geometric_mean({5.0}, 100.0) == doctest::Approx(5.0));
  CHECK(shifted_geometric_mean({0.0, 0.0}, 10.0) == doctest::Approx(0.0));
}

TEST_CASE("gap closed rows, exclusions and warnings") {
  std::vector<RunRecord> records{
      rec("a", "optimal", Rational(10), Rational(0), Rational(10), 1.0, 1),
      rec("b", "optimal", Rational(10), Rational(0), Rational(5), 7.0, 1),
      rec("flat", "optimal", Rational(4), Rational(4), Rational(4), 1.0, 1),
  };
  const Report r = build_report(records, {});
  REQUIRE(r.rows.size() == 3);
  CHECK(*r.rows[0].gap_closed_root == 1);
  CHECK(*r.rows[1].gap_closed_root == Rational(1, 2));
  CHECK_FALSE(r.rows[2].gap_closed_root.has_value());
  REQUIRE(r.warnings.size() == 1);
  CHECK(r.warnings[0].find("flat") != std::string::npos);
  CHECK(r.sgm_time == doctest::Approx(std::cbrt(2.0 * 8.0 * 2.0) - 1.0));

  const Report two = build_report({records[0], records[1]}, {});
  CHECK(two.sgm_time == doctest::Approx(3.0));

  // status disagreement and missing references are excluded
  std::vector<std::pair<std::string, ReferenceValue>> refs{{"a", {"infeasible", std::nullopt}},
                                                           {"b", {"optimal", Rational(10)}}};
  const Report withref = build_report(records, refs);
  REQUIRE(withref.rows.size() == 1);
  CHECK(withref.rows[0].instance == "b");
  CHECK(withref.warnings.size() == 2);
}

TEST_CASE("records survive a JSON round trip") {
  std::vector<RunRecord> records{rec("x", "optimal", Rational(-7, 3), Rational(-5), std::nullopt, 0.25, 12),
                                 rec("y", "infeasible", std::nullopt, std::nullopt, std::nullopt, 0.0, 1)};
  records[0].cuts = 4;
  const auto back = records_from_json(records_to_json(records));
  REQUIRE(back.size() == 2);
  CHECK(*back[0].objective == Rational(-7, 3));
  CHECK_FALSE(back[0].root_bound.has_value());
  CHECK(back[0].cuts == 4);
  CHECK(back[0].nodes == 12);
  CHECK(back[0].time_total == 0.25);
  CHECK(back[1].status == "infeasible");
  CHECK(records_to_json(back) == records_to_json(records));
}

TEST_CASE("CSV output") {
  const Report r = build_report({rec("a", "optimal", Rational(10), Rational(0), Rational(5), 1.5, 3)}, {});
  CHECK(report_csv(r, false) == "instance,status,objective,gap_closed_root,gap_closed_limit,nodes,cuts\na,optimal,10,1/2,1,3,0\n");
  CHECK(report_csv(r, true).find("1.500000") != std::string::npos);
  CHECK(report_table(r, false).find("shifted geometric mean nodes") != std::string::npos);
}

TEST_CASE("generator") {
  GeneratorConfig cfg;
  for (std::uint64_t s = 1; s <= 100; ++s) {
    const Problem p = generate_instance(s, cfg);
    CHECK(p.num_vars() >= 2);
    CHECK(p.num_vars() <= 6);
    CHECK(p.rows.size() >= 1);
    CHECK(p.rows.size() <= 8);
    for (const auto& v : p.variables) {
      CHECK(v.lower.has_value());
      CHECK(v.upper.has_value());
    }
    CHECK(write_problem(p) == write_problem(generate_instance(s, cfg)));
  }
  CHECK(write_problem(generate_instance(1, cfg)) != write_problem(generate_instance(2, cfg)));
  bool saw_third = false, saw_seventh = false;
  for (std::uint64_t s = 1; s <= 50; ++s)
    for (const auto& r : generate_instance(s, cfg).rows)
      for (const auto& [j, a] : r.coefficients) {
        saw_third = saw_third || a.get_den() == 3;
        saw_seventh = saw_seventh || a.get_den() == 7;
      }
  CHECK(saw_third);
  CHECK(saw_seventh);
}
