#include "harsanyi/attribution.hpp"

#include <bit>
#include <cstdint>
#include <string>

#include "harsanyi/error.hpp"

namespace harsanyi {

namespace {

void check_coalition(const InteractionSpectrum& spectrum,
                     const CoalitionMask& s) {
  if (s.n() != spectrum.n()) {
    throw Error(ErrorKind::BadLength,
                "coalition defined over n=" + std::to_string(s.n()) +
                    " but the spectrum has n=" + std::to_string(spectrum.n()));
  }
  if (s.empty()) {
    throw Error(ErrorKind::EmptyCoalition, "coalition must be nonempty");
  }
}

// Adds weight(|S|) * total(S) to every member of S.
template <typename Weight>
std::vector<double> allocate(const InteractionSpectrum& spectrum,
                             Weight&& weight) {
  const unsigned n = spectrum.n();
  std::vector<double> out(n, 0.0);
  const std::size_t size = lattice_size(n);
  for (std::size_t m = 1; m < size; ++m) {
    const auto s = static_cast<Mask>(m);
    const double share = spectrum.total(s) * weight(cardinality(s));
    for (Mask rest = s; rest != 0; rest &= rest - 1) {
      out[static_cast<unsigned>(std::countr_zero(rest))] += share;
    }
  }
  return out;
}

}  // namespace

std::vector<double> shapley_from_interactions(
    const InteractionSpectrum& spectrum) {
  return allocate(spectrum, [](unsigned size) { return 1.0 / size; });
}

std::vector<double> banzhaf_from_interactions(
    const InteractionSpectrum& spectrum) {
  return allocate(spectrum, [](unsigned size) {
    return 1.0 / static_cast<double>(std::uint64_t{1} << (size - 1));
  });
}

double coalition_attribution(const InteractionSpectrum& spectrum,
                             const CoalitionMask& s) {
  check_coalition(spectrum, s);
  const double size = s.size();
  double sum = 0.0;
  for_each_superset(s.bits(), full_mask(spectrum.n()), [&](Mask t) {
    sum += size / cardinality(t) * spectrum.total(t);
  });
  return sum;
}

ConflictReport conflict_decomposition(const InteractionSpectrum& spectrum,
                                      const CoalitionMask& s) {
  check_coalition(spectrum, s);
  ConflictReport report{s, coalition_attribution(spectrum, s), 0.0, 0.0, {}};

  const std::vector<double> phi = shapley_from_interactions(spectrum);
  for (unsigned i : s.members()) report.shapley_sum += phi[i];

  const Mask bits = s.bits();
  const std::size_t size = lattice_size(spectrum.n());
  for (std::size_t m = 1; m < size; ++m) {
    const auto t = static_cast<Mask>(m);
    const Mask overlap = t & bits;
    if (overlap == 0 || overlap == bits) continue;
    const double weight =
        static_cast<double>(cardinality(overlap)) / cardinality(t);
    const double contribution = weight * spectrum.total(t);
    if (contribution == 0.0) continue;
    report.terms.push_back({t, weight, contribution});
    report.partial_overlap_residual += contribution;
  }
  return report;
}

VariableShare per_variable_decomposition(const InteractionSpectrum& spectrum,
                                         const CoalitionMask& s, unsigned i) {
  check_coalition(spectrum, s);
  if (i >= s.n() || !s.contains(i)) {
    throw Error(ErrorKind::VariableNotInCoalition,
                "variable " + std::to_string(i) + " is not in the coalition");
  }
  VariableShare out;
  out.share = coalition_attribution(spectrum, s) / s.size();
  const Mask bits = s.bits();
  const Mask others = full_mask(spectrum.n()) & ~(Mask{1} << i);
  // T = {i} + extra for every extra not containing i; skip T covering S.
  for_each_subset(others, [&](Mask extra) {
    const Mask t = extra | (Mask{1} << i);
    if (is_subset(bits, t)) return;
    out.residual += spectrum.total(t) / cardinality(t);
  });
  return out;
}

EfficiencyReport efficiency_report(const InteractionSpectrum& spectrum,
                                   const CoalitionMask& s) {
  const ConflictReport conflict = conflict_decomposition(spectrum, s);
  const std::vector<double> phi = shapley_from_interactions(spectrum);

  EfficiencyReport report{s, conflict.varphi, 0.0,
                          conflict.partial_overlap_residual, 0.0,
                          spectrum.grand - spectrum.baseline};
  for (unsigned i = 0; i < spectrum.n(); ++i) {
    if (!s.contains(i)) report.outside_phi += phi[i];
  }
  report.total = report.varphi + report.outside_phi + report.residual;
  return report;
}

}  // namespace harsanyi
