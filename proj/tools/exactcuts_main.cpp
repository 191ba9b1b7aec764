#include "exactcuts/branch_and_bound.hpp"
#include "exactcuts/certificate_format.hpp"
#include "exactcuts/harness.hpp"
#include "exactcuts/problem.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <sstream>
#include <thread>

namespace fs = std::filesystem;
using namespace exactcuts;

namespace {

struct SolveFlags {
  std::string cuts = "gmi";
  long max_denom = 1L << 17;
  int rounds = 5;
  double time_limit = 0;
  long node_limit = 0;
  std::uint64_t seed = 0;

  void add(CLI::App* app) {
    app->add_option("--cuts", cuts, "cut separator")->check(CLI::IsMember({"off", "gmi"}));
    app->add_option("--max-denom", max_denom, "denominator limit for cut coefficients (0 disables)")
        ->check(CLI::NonNegativeNumber);
    app->add_option("--rounds", rounds, "root separation rounds")->check(CLI::NonNegativeNumber);
    app->add_option("--time-limit", time_limit, "seconds, 0 for none")->check(CLI::NonNegativeNumber);
    app->add_option("--node-limit", node_limit, "0 for none")->check(CLI::NonNegativeNumber);
    app->add_option("--seed", seed, "random seed");
  }

  SolverConfig config(bool certificate) const {
    SolverConfig cfg;
    cfg.cuts = cuts == "gmi" && rounds > 0;
    cfg.rounds = rounds;
    cfg.separator.max_denominator = max_denom;
    cfg.separator.certificate_mode = certificate;
    cfg.certificate = certificate;
    cfg.time_limit = time_limit;
    cfg.node_limit = node_limit;
    cfg.seed = seed;
    return cfg;
  }
};

int exit_code(SolveStatus s) { return s == SolveStatus::time_limit ? 2 : 0; }

std::string bound_str(const std::optional<Rational>& r) { return r ? to_string(*r) : "-inf"; }

int run_solve(const std::string& file, const SolveFlags& flags, const std::string& cert_path) {
  const Problem p = read_problem_file(file);
  const SolveResult r = solve(p, flags.config(!cert_path.empty()));
  std::cout << "status: " << to_string(r.status) << '\n';
  if (r.objective) std::cout << "objective: " << to_string(*r.objective) << '\n';
  if (r.status == SolveStatus::time_limit) std::cout << "dual bound: " << bound_str(r.dual_bound) << '\n';
  if (r.stats.root_bound_no_cuts) std::cout << "root bound (no cuts): " << to_string(*r.stats.root_bound_no_cuts) << '\n';
  if (r.stats.root_bound) std::cout << "root bound: " << to_string(*r.stats.root_bound) << '\n';
  std::cout << "nodes: " << r.node_count << '\n' << "cuts: " << r.cuts_added << '\n';
  if (r.incumbent) {
    std::cout << "solution:";
    for (std::size_t j = 0; j < r.incumbent->size(); ++j)
      if ((*r.incumbent)[j] != 0) std::cout << ' ' << p.variables[j].name << '=' << to_string((*r.incumbent)[j]);
    std::cout << '\n';
  }
  if (!cert_path.empty()) {
    if (!r.certificate) throw std::runtime_error("no certificate produced (limit reached)");
    vipr::write_certificate_file(*r.certificate, cert_path);
    std::cout << "certificate: " << cert_path << '\n';
  }
  return exit_code(r.status);
}

std::vector<fs::path> collect_instances(const std::vector<std::string>& inputs) {
  std::vector<fs::path> files;
  for (const auto& in : inputs) {
    if (fs::is_directory(in)) {
      for (const auto& e : fs::directory_iterator(in))
        if (e.is_regular_file() && e.path().extension() == ".prob") files.push_back(e.path());
    } else {
      files.emplace_back(in);
    }
  }
  std::sort(files.begin(), files.end());
  return files;
}

unsigned thread_count() {
  unsigned n = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("EXACTCUTS_THREADS")) {
    const long cap = std::strtol(env, nullptr, 10);
    if (cap > 0) n = std::min<unsigned>(n, static_cast<unsigned>(cap));
  }
  return n;
}

int run_batch(const std::vector<std::string>& inputs, const std::string& out_dir, const SolveFlags& flags,
              const std::string& cert_dir) {
  const auto files = collect_instances(inputs);
  fs::create_directories(out_dir);
  if (!cert_dir.empty()) fs::create_directories(cert_dir);
  std::atomic<std::size_t> next{0};
  std::atomic<int> failures{0};
  std::mutex log_mu;
  auto worker = [&] {
    for (std::size_t i = next++; i < files.size(); i = next++) {
      const auto& f = files[i];
      const std::string name = f.stem().string();
      try {
        const Problem p = read_problem_file(f.string());
        const SolveResult r = solve(p, flags.config(!cert_dir.empty()));
        std::ofstream(fs::path(out_dir) / (name + ".json")) << records_to_json({make_record(name, r)});
        if (!cert_dir.empty() && r.certificate)
          vipr::write_certificate_file(*r.certificate, (fs::path(cert_dir) / (name + ".vipr")).string());
        std::lock_guard lock(log_mu);
        std::cout << name << ' ' << to_string(r.status) << '\n';
      } catch (const std::exception& e) {
        ++failures;
        std::lock_guard lock(log_mu);
        std::cerr << name << ": " << e.what() << '\n';
      }
    }
  };
  std::vector<std::thread> pool;
  const unsigned n = std::min<unsigned>(thread_count(), static_cast<unsigned>(std::max<std::size_t>(files.size(), 1)));
  for (unsigned t = 0; t < n; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  return failures ? 1 : 0;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  if (!in) throw std::runtime_error("cannot open " + p.string());
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

// CSV lines: instance,status,objective (objective empty when infeasible).
std::vector<std::pair<std::string, ReferenceValue>> read_references(const std::string& path) {
  std::vector<std::pair<std::string, ReferenceValue>> refs;
  std::istringstream in(slurp(path));
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#' || line.rfind("instance,", 0) == 0) continue;
    std::vector<std::string> f;
    std::stringstream ls(line);
    for (std::string cell; std::getline(ls, cell, ',');) f.push_back(cell);
    if (f.size() < 2) throw std::runtime_error("bad reference line: " + line);
    ReferenceValue v{f[1], std::nullopt};
    if (f.size() > 2 && !f[2].empty()) v.objective = parse_rational(f[2]);
    refs.emplace_back(f[0], v);
  }
  return refs;
}

int run_report(const std::string& records_path, const std::string& ref_path, const std::string& csv_path,
               bool timings) {
  std::vector<RunRecord> records;
  std::vector<fs::path> files;
  if (fs::is_directory(records_path)) {
    for (const auto& e : fs::directory_iterator(records_path))
      if (e.path().extension() == ".json") files.push_back(e.path());
  } else {
    files.emplace_back(records_path);
  }
  std::sort(files.begin(), files.end());
  for (const auto& f : files)
    for (auto& r : records_from_json(slurp(f))) records.push_back(std::move(r));
  std::sort(records.begin(), records.end(), [](const auto& a, const auto& b) { return a.instance < b.instance; });
  const auto refs = ref_path.empty() ? decltype(read_references("")){} : read_references(ref_path);
  const Report rep = build_report(records, refs);
  std::cout << report_table(rep, timings);
  if (!csv_path.empty()) std::ofstream(csv_path, std::ios::binary) << report_csv(rep, timings);
  return 0;
}

int run_generate(const std::string& out_dir, int count, std::uint64_t seed, const GeneratorConfig& cfg) {
  fs::create_directories(out_dir);
  for (int i = 0; i < count; ++i) {
    const std::uint64_t s = seed + static_cast<std::uint64_t>(i);
    std::ostringstream name;
    name << "gen_" << s << ".prob";
    std::ofstream(fs::path(out_dir) / name.str(), std::ios::binary) << write_problem(generate_instance(s, cfg));
  }
  std::cout << "wrote " << count << " instances to " << out_dir << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact MIP solver with numerically safe Gomory mixed-integer cuts"};
  app.require_subcommand(1);

  SolveFlags solve_flags;
  std::string file, cert;
  auto* sc = app.add_subcommand("solve", "solve one instance exactly");
  sc->add_option("file", file, "instance file")->required()->check(CLI::ExistingFile);
  sc->add_option("--certificate", cert, "write a certificate (weak records left for vipr-complete)");
  solve_flags.add(sc);

  SolveFlags batch_flags;
  std::vector<std::string> inputs;
  std::string out_dir = "results", cert_dir;
  auto* bc = app.add_subcommand("batch", "solve many instances; EXACTCUTS_THREADS caps parallelism");
  bc->add_option("inputs", inputs, "instance files or directories of .prob files")->required();
  bc->add_option("--out", out_dir, "directory for per-instance JSON records");
  bc->add_option("--certificates", cert_dir, "directory for per-instance certificates");
  batch_flags.add(bc);

  std::string records_path, ref_path, csv_path;
  bool timings = false;
  auto* rc = app.add_subcommand("report", "gap-closed table and shifted geometric means");
  rc->add_option("records", records_path, "record directory or JSON file")->required();
  rc->add_option("--reference", ref_path, "CSV of instance,status,objective");
  rc->add_option("--csv", csv_path, "also write the table as CSV");
  rc->add_flag("--timings", timings, "include wall-clock columns (not reproducible)");

  std::string gen_dir = "instances";
  int count = 10;
  std::uint64_t gen_seed = 1;
  GeneratorConfig gcfg;
  auto* gc = app.add_subcommand("generate", "write random bounded instances");
  gc->add_option("--out", gen_dir, "output directory");
  gc->add_option("--count", count, "number of instances")->check(CLI::PositiveNumber);
  gc->add_option("--seed", gen_seed, "first seed");
  gc->add_option("--max-vars", gcfg.max_vars)->check(CLI::Range(1, 64));
  gc->add_option("--max-rows", gcfg.max_rows)->check(CLI::Range(1, 64));
  gc->add_option("--max-bound", gcfg.max_bound)->check(CLI::Range(1, 1000));
  gc->add_flag("--mixed", gcfg.mixed, "allow continuous variables");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc_code = app.exit(e);
    return rc_code == 0 ? 0 : 1;
  }
  gcfg.min_vars = std::min(gcfg.min_vars, gcfg.max_vars);

  try {
    if (*sc) return run_solve(file, solve_flags, cert);
    if (*bc) return run_batch(inputs, out_dir, batch_flags, cert_dir);
    if (*rc) return run_report(records_path, ref_path, csv_path, timings);
    if (*gc) return run_generate(gen_dir, count, gen_seed, gcfg);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
