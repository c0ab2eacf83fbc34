#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "harsanyi/game.hpp"
#include "harsanyi/lattice.hpp"

namespace harsanyi {

enum class SplitMode { AndOnly, OrOnly, Balanced, Learned };

std::optional<SplitMode> parse_split_mode(std::string_view text);
std::string_view to_string(SplitMode mode);

// v = v_and + v_or with v_and(L) = v(L)/2 + gamma_L, v_or(L) = v(L)/2 - gamma_L.
class AndOrSplit {
 public:
  // Throws Error(BadLength) if gamma's n differs from the table's,
  // Error(NonFinite) on a non-finite gamma entry.
  AndOrSplit(ValueTable table, LatticeVector gamma, SplitMode mode);

  const ValueTable& table() const noexcept { return table_; }
  const LatticeVector& gamma() const noexcept { return gamma_; }
  SplitMode mode() const noexcept { return mode_; }
  unsigned n() const noexcept { return table_.n(); }

  LatticeVector v_and() const;
  LatticeVector v_or() const;

 private:
  ValueTable table_;
  LatticeVector gamma_;
  SplitMode mode_;
};

// and-only: gamma = v/2, or-only: gamma = -v/2, balanced: gamma = 0.
// Throws Error(InvalidConfig) for SplitMode::Learned.
AndOrSplit split_fixed(const ValueTable& table, SplitMode mode);

// Sum over nonempty S of |I_and(S)| + |I_or(S)|.
double sparsity_loss(const AndOrSplit& split);

enum class OptimizerMethod {
  // Diagonally preconditioned primal-dual iteration on
  // min_gamma max_{|y| <= 1} <y, spectrum(gamma)>; step0 sets the primal
  // scale and decay is not used.
  PrimalDual,
  // Normalized subgradient steps of length step0 / (1 + t)^decay.
  Subgradient,
};

std::optional<OptimizerMethod> parse_optimizer_method(std::string_view text);
std::string_view to_string(OptimizerMethod method);

struct OptimizerConfig {
  OptimizerMethod method = OptimizerMethod::PrimalDual;
  int max_iters = 2000;
  // Derived from the table when unset, see default_step0().
  std::optional<double> step0;
  double decay = 0.5;
  double tol = 1e-7;
  std::uint64_t seed = 0;
};

// Throws Error(InvalidConfig) on max_iters < 1, step0 <= 0, tol < 0 or a
// non-finite decay.
void validate(const OptimizerConfig& config);

// 0.05 * max(1, max|v|).
double default_step0(const ValueTable& table);

struct OptimizationResult {
  AndOrSplit split;
  double loss = 0.0;
  double initial_loss = 0.0;  // at gamma = 0
  int iterations = 0;
  bool converged = false;
  // best_loss[k] is the lowest loss seen after k iterations (entry 0 is the
  // starting point); nonincreasing by construction.
  std::vector<double> best_loss;
};

// Minimizes sparsity_loss over gamma starting from gamma = 0 and returns the
// best iterate. The three fixed splits count as candidate iterates, so the
// result is never worse than any fixed mode. Stops after max_iters, or once
// the best loss improved by no more than tol (relative) over the last 500
// iterations. Throws Error(Diverged) if an iterate's loss exceeds 1e3 times
// the loss at gamma = 0.
OptimizationResult optimize_gamma(const ValueTable& table,
                                  const OptimizerConfig& config);

// Gradient of the loss w.r.t. gamma at the given split, using sign(0) = 0.
LatticeVector sparsity_subgradient(const AndOrSplit& split);

}  // namespace harsanyi
