#pragma once

#include "exactcuts/certificate_format.hpp"

#include <stdexcept>
#include <vector>

namespace exactcuts {

enum class CompletionMode { bounds, exact_lp };

class CompletionError : public std::runtime_error {
 public:
  CompletionError(const std::string& what, std::vector<int> indices)
      : std::runtime_error(what), indices_(std::move(indices)) {}
  const std::vector<int>& indices() const { return indices_; }

 private:
  std::vector<int> indices_;
};

// Rewrites every weak derivation into a strict lin derivation; statements are
// left untouched. Throws CompletionError naming all derivations it could not
// complete.
vipr::Certificate complete_certificate(const vipr::Certificate& in, CompletionMode mode);

}  // namespace exactcuts
