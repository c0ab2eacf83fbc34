#pragma once

#include "harsanyi/game.hpp"
#include "harsanyi/lattice.hpp"

// Slow reference implementations straight from the definitions. Nothing here
// calls the transform kernels or the interaction engine.
namespace harsanyi::oracle {

inline constexpr unsigned kOracleCap = 12;
inline constexpr unsigned kPermutationCap = 8;

// Weighted marginal sum over S in N \ {i} with weight 1 / (n * C(n-1, |S|)).
// Throws Error(CapExceeded) for n > kOracleCap, IndexOutOfRange for i >= n.
double shapley_direct(const ValueTable& table, unsigned i);

// Average of i's marginal contribution over all n! orderings.
// Throws Error(CapExceeded) for n > kPermutationCap.
double shapley_permutation(const ValueTable& table, unsigned i);

// 2^{-(n-1)} * sum over S in N \ {i} of v(S + i) - v(S).
double banzhaf_direct(const ValueTable& table, unsigned i);

// sum_{L subset of S} (-1)^{|S|-|L|} f(L), iterating L over all masks.
double harsanyi_and_direct(const LatticeVector& v_and, Mask s);

// -sum_{L subset of S} (-1)^{|S|-|L|} f(N \ L). Throws EmptyCoalition for
// S = empty.
double harsanyi_or_direct(const LatticeVector& v_or, Mask s);

// Brute-force transforms over all (S, L) mask pairs; same cap as above.
LatticeVector mobius_naive(const LatticeVector& f);
LatticeVector zeta_naive(const LatticeVector& g);

}  // namespace harsanyi::oracle
