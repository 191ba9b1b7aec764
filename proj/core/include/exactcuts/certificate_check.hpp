#pragma once

#include "exactcuts/certificate_format.hpp"

#include <istream>
#include <string>

namespace exactcuts::vipr {

struct Verdict {
  bool accepted = false;
  std::string reason;
  int index = -1;  // global index of the offending derivation, or -1
  int line = -1;   // parse errors only
};

// Strict forward-pass check in exact arithmetic. Any weak record is rejected.
Verdict check_certificate(const Certificate& c);
Verdict check_certificate_stream(std::istream& in);

}  // namespace exactcuts::vipr
