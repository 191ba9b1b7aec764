#include "exactcuts/certificate_complete.hpp"
#include "exactcuts/certificate_format.hpp"

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char** argv) {
  CLI::App app{"Replace weak derivations by explicit linear combinations"};
  std::string in, out;
  bool exact_lp = false;
  app.add_option("input", in, "certificate with weak records")->required();
  app.add_option("output", out, "completed certificate")->required();
  app.add_flag("--exact-lp", exact_lp, "search multipliers with an exact LP over all available constraints");
  CLI11_PARSE(app, argc, argv);
  using namespace exactcuts;
  try {
    const auto cert = vipr::read_certificate_file(in);
    const auto done = complete_certificate(cert, exact_lp ? CompletionMode::exact_lp : CompletionMode::bounds);
    vipr::write_certificate_file(done, out);
  } catch (const CompletionError& e) {
    std::cerr << "vipr-complete: " << e.what();
    if (!e.indices().empty()) {
      std::cerr << " (derivation";
      for (int i : e.indices()) std::cerr << ' ' << i;
      std::cerr << ')';
    }
    std::cerr << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "vipr-complete: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
