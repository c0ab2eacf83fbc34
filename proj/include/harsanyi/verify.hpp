#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "harsanyi/andor.hpp"
#include "harsanyi/game.hpp"

namespace harsanyi {

struct IdentityResult {
  std::string name;
  double max_error = 0.0;
  double tolerance = 0.0;  // absolute, already scaled by max(1, max|v|)
  std::size_t checks = 0;
  bool passed = true;
};

struct VerifyOptions {
  OptimizerConfig optimizer;
  // Random gamma vectors (uniform in [-1, 1]) checked next to the fixed
  // and learned splits.
  std::size_t gamma_draws = 20;
  // Above this n the per-coalition identities run on a seeded sample of
  // coalitions instead of all 2^n - 1.
  unsigned all_coalitions_up_to = 8;
  std::size_t coalition_sample = 64;
  double relative_tolerance = 1e-9;
  double singleton_tolerance = 1e-12;
};

// Checks every attribution and decomposition identity on the table against
// the reference oracle. Throws Error(CapExceeded) for n above the oracle cap.
std::vector<IdentityResult> verify_identities(const ValueTable& table,
                                              const VerifyOptions& options);

}  // namespace harsanyi
