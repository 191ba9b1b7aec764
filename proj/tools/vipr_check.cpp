#include "exactcuts/certificate_check.hpp"
#include "exactcuts/certificate_format.hpp"

#include <fstream>
#include <iostream>

int main(int argc, char** argv) {
  if (argc != 2) {
    std::cerr << "usage: vipr-check <file>\n";
    return 1;
  }
  std::ifstream in(argv[1]);
  if (!in) {
    std::cerr << "vipr-check: cannot open " << argv[1] << '\n';
    return 1;
  }
  try {
    const auto v = exactcuts::vipr::check_certificate_stream(in);
    if (v.accepted) {
      std::cout << "accepted\n";
      return 0;
    }
    std::cerr << "rejected: " << v.reason;
    if (v.index >= 0) std::cerr << " (derivation " << v.index << ")";
    std::cerr << '\n';
  } catch (const std::exception& e) {
    std::cerr << "rejected: " << e.what() << '\n';
  }
  return 1;
}
