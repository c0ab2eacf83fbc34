#pragma once

// Shared fixtures and brute-force references for the test binaries. The
// references below are written against the raw definitions and use only
// std containers, so they do not route through the library kernels.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

#include "harsanyi/andor.hpp"
#include "harsanyi/game.hpp"
#include "harsanyi/lattice.hpp"

namespace testing {

using harsanyi::LatticeVector;
using harsanyi::Mask;
using harsanyi::ValueTable;

inline int popcount(std::uint32_t m) {
  int c = 0;
  for (; m != 0; m &= m - 1) ++c;
  return c;
}

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline LatticeVector random_vector(unsigned n, std::mt19937_64& rng,
                                   double lo = -1.0, double hi = 1.0) {
  LatticeVector out(n);
  for (double& x : out.values()) x = uniform(rng, lo, hi);
  return out;
}

inline ValueTable random_table(unsigned n, std::mt19937_64& rng) {
  return ValueTable(random_vector(n, rng, -5.0, 5.0));
}

inline double scale_of(const ValueTable& t) {
  return std::max(1.0, t.max_abs());
}

inline ValueTable table_of(unsigned n, std::vector<double> values) {
  return ValueTable(LatticeVector(n, std::move(values)));
}

// g(S) = sum_{L subset S} (-1)^{|S|-|L|} f(L), by double loop.
inline std::vector<double> brute_mobius(const std::vector<double>& f) {
  const std::size_t size = f.size();
  std::vector<double> g(size, 0.0);
  for (std::size_t s = 0; s < size; ++s) {
    for (std::size_t l = 0; l < size; ++l) {
      if ((l & ~s) != 0) continue;
      const int sign = (popcount(static_cast<std::uint32_t>(s ^ l)) % 2) ? -1 : 1;
      g[s] += sign * f[l];
    }
  }
  return g;
}

inline std::vector<double> brute_zeta(const std::vector<double>& g) {
  const std::size_t size = g.size();
  std::vector<double> f(size, 0.0);
  for (std::size_t s = 0; s < size; ++s) {
    for (std::size_t l = 0; l < size; ++l) {
      if ((l & ~s) == 0) f[s] += g[l];
    }
  }
  return f;
}

inline std::vector<double> to_std(const LatticeVector& v) {
  return {v.values().begin(), v.values().end()};
}

// Brute-force spectra straight from the AND/OR definitions.
struct BruteSpectrum {
  std::vector<double> i_and;
  std::vector<double> i_or;  // entry 0 unused
};

inline BruteSpectrum brute_spectrum(const ValueTable& table,
                                    const LatticeVector& gamma) {
  const unsigned n = table.n();
  const std::size_t size = std::size_t{1} << n;
  const std::size_t full = size - 1;
  std::vector<double> v_and(size), v_or_reflected(size);
  for (std::size_t l = 0; l < size; ++l) {
    const auto m = static_cast<Mask>(l);
    v_and[l] = 0.5 * table(m) + gamma[m];
  }
  for (std::size_t l = 0; l < size; ++l) {
    const auto comp = static_cast<Mask>(full & ~l);
    v_or_reflected[l] = 0.5 * table(comp) - gamma[comp];
  }
  BruteSpectrum out{brute_mobius(v_and), brute_mobius(v_or_reflected)};
  for (double& x : out.i_or) x = -x;
  out.i_or[0] = 0.0;
  return out;
}

// Shapley value as the average marginal contribution over all orderings.
inline std::vector<double> brute_shapley(const ValueTable& table) {
  const unsigned n = table.n();
  std::vector<unsigned> order(n);
  std::iota(order.begin(), order.end(), 0u);
  std::vector<double> phi(n, 0.0);
  double count = 0.0;
  do {
    Mask before = 0;
    for (unsigned i : order) {
      phi[i] += table(before | (Mask{1} << i)) - table(before);
      before |= Mask{1} << i;
    }
    count += 1.0;
  } while (std::next_permutation(order.begin(), order.end()));
  for (double& x : phi) x /= count;
  return phi;
}

// varphi(S) from the brute spectrum: sum over T containing S of
// |S|/|T| (I_and + I_or)(T).
inline double brute_coalition(const BruteSpectrum& spec, Mask s) {
  double out = 0.0;
  for (std::size_t t = 1; t < spec.i_and.size(); ++t) {
    if ((s & ~t) != 0) continue;
    out += static_cast<double>(popcount(s)) /
           popcount(static_cast<std::uint32_t>(t)) *
           (spec.i_and[t] + spec.i_or[t]);
  }
  return out;
}

// v(pi(S)) for a variable permutation pi.
inline Mask permute_mask(Mask s, const std::vector<unsigned>& pi) {
  Mask out = 0;
  for (unsigned i = 0; i < pi.size(); ++i) {
    if ((s >> i) & 1u) out |= Mask{1} << pi[i];
  }
  return out;
}

}  // namespace testing
