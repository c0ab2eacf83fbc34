#include "harsanyi/interactions.hpp"

namespace harsanyi {

LatticeVector and_interactions(const AndOrSplit& split) {
  return mobius_transform(split.v_and());
}

LatticeVector or_interactions(const AndOrSplit& split) {
  LatticeVector out = mobius_transform(reflect(split.v_or()));
  out *= -1.0;
  out[0] = 0.0;
  return out;
}

InteractionSpectrum compute_spectrum(const AndOrSplit& split) {
  return InteractionSpectrum{and_interactions(split), or_interactions(split),
                             split.table().baseline(), split.table().grand()};
}

double reconstruct_value(const InteractionSpectrum& spectrum, Mask s) {
  double and_part = 0.0;
  for_each_subset(s, [&](Mask l) {
    if (l != 0) and_part += spectrum.i_and[l];
  });
  double or_part = 0.0;
  const std::size_t size = lattice_size(spectrum.n());
  for (std::size_t m = 1; m < size; ++m) {
    const auto l = static_cast<Mask>(m);
    if ((l & s) != 0) or_part += spectrum.i_or[l];
  }
  return spectrum.baseline + and_part + or_part;
}

LatticeVector reconstruct_all(const InteractionSpectrum& spectrum) {
  const unsigned n = spectrum.n();
  const Mask full = full_mask(n);

  LatticeVector and_sums = spectrum.i_and;
  and_sums[0] = 0.0;
  and_sums = zeta_transform(std::move(and_sums));

  // Sum over L meeting S = (sum over all L) - (sum over L inside N \ S).
  const LatticeVector or_sums = zeta_transform(spectrum.i_or);
  const double or_total = or_sums[full];

  LatticeVector out(n);
  for (std::size_t m = 0; m < out.size(); ++m) {
    const auto s = static_cast<Mask>(m);
    out[s] = spectrum.baseline + and_sums[s] + (or_total - or_sums[full ^ s]);
  }
  return out;
}

}  // namespace harsanyi
