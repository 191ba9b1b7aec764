#include "exactcuts/branch_and_bound.hpp"
#include "exactcuts/continued_fraction.hpp"
#include "exactcuts/directed_rounding.hpp"
#include "exactcuts/harness.hpp"
#include "exactcuts/safe_cuts.hpp"
#include "exactcuts/simplex.hpp"

#include <benchmark/benchmark.h>

#include <random>

using namespace exactcuts;

namespace {

std::vector<Rational> random_rationals(std::size_t n) {
  std::mt19937_64 rng(42);
  std::vector<Rational> out;
  for (std::size_t i = 0; i < n; ++i) {
    Rational r(static_cast<long>(rng() % 2000001) - 1000000, static_cast<long>(rng() % 999999) + 1);
    r.canonicalize();
    out.push_back(r);
  }
  return out;
}

void BM_RoundUp(benchmark::State& state) {
  const auto xs = random_rationals(1024);
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(round_up(xs[i++ & 1023]));
}
BENCHMARK(BM_RoundUp);

void BM_SafeSumUp(benchmark::State& state) {
  std::vector<double> t;
  for (const auto& r : random_rationals(static_cast<std::size_t>(state.range(0)))) t.push_back(r.get_d());
  for (auto _ : state) benchmark::DoNotOptimize(safe_sum_up(t));
}
BENCHMARK(BM_SafeSumUp)->Arg(4)->Arg(32);

void BM_BestApprox(benchmark::State& state) {
  const auto xs = random_rationals(1024);
  const Integer max_den(state.range(0));
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(best_approx(xs[i++ & 1023], max_den, ApproxDirection::two_sided));
}
BENCHMARK(BM_BestApprox)->Arg(50)->Arg(1 << 17);

LpRelaxation bench_lp(std::uint64_t seed) {
  GeneratorConfig g;
  g.min_vars = g.max_vars = 6;
  g.max_rows = 8;
  return lp_from_problem(generate_instance(seed, g));
}

void BM_SimplexFloat(benchmark::State& state) {
  const auto lp = bench_lp(11);
  for (auto _ : state) benchmark::DoNotOptimize(solve_float(lp));
}
BENCHMARK(BM_SimplexFloat);

void BM_SimplexExact(benchmark::State& state) {
  const auto lp = bench_lp(11);
  for (auto _ : state) benchmark::DoNotOptimize(solve_exact(lp));
}
BENCHMARK(BM_SimplexExact);

void BM_SeparateGmi(benchmark::State& state) {
  GeneratorConfig g;
  g.min_vars = g.max_vars = 6;
  const Problem p = generate_instance(11, g);
  const auto lp = lp_from_problem(p);
  std::vector<bool> is_int;
  for (const auto& v : p.variables) is_int.push_back(v.is_integer);
  const auto res = solve_float(lp);
  SeparatorConfig cfg;
  cfg.max_denominator = state.range(0);
  for (auto _ : state) benchmark::DoNotOptimize(separate_gmi(lp, is_int, res, cfg));
}
BENCHMARK(BM_SeparateGmi)->Arg(0)->Arg(1 << 17);

void BM_SolveWithCuts(benchmark::State& state) {
  GeneratorConfig g;
  g.max_bound = 6;
  const Problem p = generate_instance(static_cast<std::uint64_t>(state.range(0)), g);
  SolverConfig cfg;
  for (auto _ : state) benchmark::DoNotOptimize(solve(p, cfg));
}
BENCHMARK(BM_SolveWithCuts)->Arg(3)->Arg(17);

}  // namespace
BENCHMARK_MAIN();
