#pragma once

#include "exactcuts/certificate_builder.hpp"
#include "exactcuts/safe_cuts.hpp"

#include <map>
#include <optional>
#include <vector>

namespace exactcuts {

// Split disjunction behind a MIR cut, in the transformed space.
struct MirSplitWitness {
  std::vector<int> n1;  // positions in MirData::terms with f_j <= f
  std::vector<int> n2;  // positions with f_j > f
  std::vector<int> continuous;
  std::map<int, Integer> w;  // term position -> floor(g) on n1, ceil(g) on n2
  Integer rhs;               // floor(d)
};

MirSplitWitness split_witness(const MirData& mir);

// Where the proof finds its premises: each current LP row and each variable
// bound as certificate references.
struct MirProofContext {
  std::vector<CertRef> lp_rows;
  std::vector<std::optional<int>> lower;
  std::vector<std::optional<int>> upper;
  // Relaxed copies of LP rows already written, keyed by LP row.
  std::map<int, std::pair<RelaxedRow, int>> relaxed_cache;
};

struct MirProofIndices {
  int base = -1;
  int u_nonneg = -1;
  int split_down = -1;
  int split_up = -1;
  int side1 = -1;
  int side2 = -1;
  int side2_negated = -1;
  int unsplit = -1;
  std::optional<int> pre_round;
  int final_cut = -1;
};

// Emits the derivation block proving `cut` (which must carry its MIR
// provenance). Returns the indices; final_cut states the cut itself.
MirProofIndices emit_mir_proof(const Cut& cut, CertificateBuilder& b, MirProofContext& ctx, const std::string& tag);

}  // namespace exactcuts
