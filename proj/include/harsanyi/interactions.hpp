#pragma once

#include "harsanyi/andor.hpp"
#include "harsanyi/lattice.hpp"

namespace harsanyi {

// AND and OR interaction effects of one split. i_and[0] holds v_and(empty)
// and i_or[0] is always 0; only nonempty masks are interactions proper.
struct InteractionSpectrum {
  LatticeVector i_and;
  LatticeVector i_or;
  double baseline = 0.0;  // v(empty)
  double grand = 0.0;     // v(N)

  unsigned n() const noexcept { return i_and.n(); }
  // I_and(S) + I_or(S); zero at the empty mask.
  double total(Mask s) const { return s == 0 ? 0.0 : i_and[s] + i_or[s]; }
};

// I_and(S) = sum_{L subset of S} (-1)^{|S|-|L|} v_and(L).
LatticeVector and_interactions(const AndOrSplit& split);
// I_or(S) = -sum_{L subset of S} (-1)^{|S|-|L|} v_or(N \ L), S nonempty.
LatticeVector or_interactions(const AndOrSplit& split);

InteractionSpectrum compute_spectrum(const AndOrSplit& split);

// v(empty) + sum_{nonempty L subset of S} I_and(L)
//          + sum_{L intersecting S} I_or(L), by direct summation.
double reconstruct_value(const InteractionSpectrum& spectrum, Mask s);

// The same reconstruction for every mask at once through zeta transforms,
// O(n 2^n).
LatticeVector reconstruct_all(const InteractionSpectrum& spectrum);

}  // namespace harsanyi
