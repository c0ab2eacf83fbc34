#pragma once

#include <vector>

#include "harsanyi/interactions.hpp"
#include "harsanyi/lattice.hpp"

namespace harsanyi {

// phi(i) = sum_{S containing i} (I_and(S) + I_or(S)) / |S|, for all i in one
// O(n 2^n) pass.
std::vector<double> shapley_from_interactions(
    const InteractionSpectrum& spectrum);

// B(i) = sum_{S containing i} (I_and(S) + I_or(S)) / 2^{|S|-1}.
std::vector<double> banzhaf_from_interactions(
    const InteractionSpectrum& spectrum);

// varphi(S) = sum_{T superset of S} |S|/|T| (I_and(T) + I_or(T)).
// Throws Error(EmptyCoalition) for S = empty.
double coalition_attribution(const InteractionSpectrum& spectrum,
                             const CoalitionMask& s);

// One interaction T that meets S without covering it.
struct ResidualTerm {
  Mask mask = 0;
  double weight = 0.0;  // |T & S| / |T|
  double contribution = 0.0;
};

struct ConflictReport {
  CoalitionMask coalition;
  double varphi = 0.0;
  double shapley_sum = 0.0;
  // Sum of terms[].contribution, accumulated in mask order.
  double partial_overlap_residual = 0.0;
  std::vector<ResidualTerm> terms;
};

// varphi(S) next to sum_{i in S} phi(i) and the partial-overlap residual
// that separates them. terms holds every T with a nonzero contribution.
ConflictReport conflict_decomposition(const InteractionSpectrum& spectrum,
                                      const CoalitionMask& s);

struct VariableShare {
  double share = 0.0;     // varphi(S) / |S|
  double residual = 0.0;  // sum over T containing i, not covering S
};

// Splits phi(i), i in S, into the uniform share of varphi(S) and the effect
// of interactions holding i but not all of S. Throws
// Error(VariableNotInCoalition) when i is not in S.
VariableShare per_variable_decomposition(const InteractionSpectrum& spectrum,
                                         const CoalitionMask& s, unsigned i);

struct EfficiencyReport {
  CoalitionMask coalition;
  double varphi = 0.0;
  double outside_phi = 0.0;  // sum of phi(i) over i outside S
  double residual = 0.0;
  double total = 0.0;   // varphi + outside_phi + residual
  double target = 0.0;  // v(N) - v(empty)
};

EfficiencyReport efficiency_report(const InteractionSpectrum& spectrum,
                                   const CoalitionMask& s);

}  // namespace harsanyi
