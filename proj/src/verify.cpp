#include "harsanyi/verify.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <utility>

#include "harsanyi/attribution.hpp"
#include "harsanyi/error.hpp"
#include "harsanyi/interactions.hpp"
#include "harsanyi/oracle.hpp"

namespace harsanyi {

namespace {

class Tracker {
 public:
  Tracker(std::string name, double tolerance)
      : result_{std::move(name), 0.0, tolerance, 0, true} {}

  void observe(double error) {
    ++result_.checks;
    if (!(error <= result_.max_error)) result_.max_error = error;
    if (!(error <= result_.tolerance)) result_.passed = false;
  }
  void observe(double got, double want) { observe(std::abs(got - want)); }

  IdentityResult result() const { return result_; }

 private:
  IdentityResult result_;
};

LatticeVector random_lattice(unsigned n, std::mt19937_64& rng) {
  LatticeVector out(n);
  for (double& x : out.values()) x = uniform_from_bits(rng(), -1.0, 1.0);
  return out;
}

std::vector<Mask> coalitions_to_check(unsigned n, const VerifyOptions& options,
                                      std::mt19937_64& rng) {
  const Mask full = full_mask(n);
  std::vector<Mask> out;
  if (n <= options.all_coalitions_up_to) {
    for (Mask s = 1; s <= full; ++s) out.push_back(s);
    return out;
  }
  std::set<Mask> picked;
  for (unsigned i = 0; i < n; ++i) picked.insert(Mask{1} << i);
  picked.insert(full);
  while (picked.size() < options.coalition_sample + n + 1) {
    const Mask s = static_cast<Mask>(rng()) & full;
    if (s != 0) picked.insert(s);
  }
  return {picked.begin(), picked.end()};
}

}  // namespace

std::vector<IdentityResult> verify_identities(const ValueTable& table,
                                              const VerifyOptions& options) {
  const unsigned n = table.n();
  if (n > oracle::kOracleCap) {
    throw Error(ErrorKind::CapExceeded,
                "verify needs the reference oracle, limited to n <= " +
                    std::to_string(oracle::kOracleCap));
  }
  const double scale = std::max(1.0, table.max_abs());
  const double tol = options.relative_tolerance * scale;
  const Mask full = full_mask(n);
  std::mt19937_64 rng(options.optimizer.seed);

  Tracker roundtrip("mobius_zeta_roundtrip", tol);
  Tracker mobius_naive("mobius_fast_vs_naive", tol);
  Tracker zeta_naive("zeta_fast_vs_naive", tol);
  {
    const LatticeVector& v = table.values();
    const LatticeVector back = zeta_transform(mobius_transform(v));
    const LatticeVector fast_m = mobius_transform(v);
    const LatticeVector slow_m = oracle::mobius_naive(v);
    const LatticeVector fast_z = zeta_transform(v);
    const LatticeVector slow_z = oracle::zeta_naive(v);
    for (Mask s = 0; s <= full; ++s) {
      roundtrip.observe(back[s], v[s]);
      mobius_naive.observe(fast_m[s], slow_m[s]);
      zeta_naive.observe(fast_z[s], slow_z[s]);
    }
  }

  Tracker permutation("shapley_permutation_average", tol);
  std::vector<double> shapley_ref(n);
  std::vector<double> banzhaf_ref(n);
  for (unsigned i = 0; i < n; ++i) {
    shapley_ref[i] = oracle::shapley_direct(table, i);
    banzhaf_ref[i] = oracle::banzhaf_direct(table, i);
    if (n <= oracle::kPermutationCap) {
      permutation.observe(oracle::shapley_permutation(table, i),
                          shapley_ref[i]);
    }
  }

  std::vector<AndOrSplit> splits;
  for (SplitMode mode :
       {SplitMode::AndOnly, SplitMode::OrOnly, SplitMode::Balanced}) {
    splits.push_back(split_fixed(table, mode));
  }
  const OptimizationResult learned = optimize_gamma(table, options.optimizer);
  splits.push_back(learned.split);
  for (std::size_t k = 0; k < options.gamma_draws; ++k) {
    splits.emplace_back(table, random_lattice(n, rng), SplitMode::Learned);
  }

  Tracker optimizer("optimizer_not_worse_than_fixed_splits", 1e-9);
  {
    double best_fixed = sparsity_loss(splits[0]);
    for (std::size_t k = 1; k < 3; ++k) {
      best_fixed = std::min(best_fixed, sparsity_loss(splits[k]));
    }
    optimizer.observe(std::max(0.0, learned.loss - best_fixed));
  }

  const std::vector<Mask> coalitions = coalitions_to_check(n, options, rng);

  Tracker conservation("split_conservation", tol);
  Tracker and_def("and_interactions_vs_definition", tol);
  Tracker or_def("or_interactions_vs_definition", tol);
  Tracker matching("universal_matching", tol);
  Tracker sum_rule("interaction_sum_rule", tol);
  Tracker shapley("shapley_reformulation", tol);
  Tracker banzhaf("banzhaf_reformulation", tol);
  Tracker efficiency_global("shapley_efficiency", tol);
  Tracker singleton("singleton_coalition_equals_shapley",
                    options.singleton_tolerance * scale);
  Tracker conflict("conflict_identity", tol);
  Tracker breakdown("conflict_terms_sum_to_residual", 0.0);
  Tracker per_variable("per_variable_decomposition", tol);
  Tracker efficiency("coalition_efficiency", tol);

  for (const AndOrSplit& split : splits) {
    const LatticeVector v_and = split.v_and();
    const LatticeVector v_or = split.v_or();
    for (Mask s = 0; s <= full; ++s) {
      conservation.observe(v_and[s] + v_or[s], table(s));
    }

    const InteractionSpectrum spectrum = compute_spectrum(split);
    double interaction_sum = 0.0;
    for (Mask s = 0; s <= full; ++s) {
      and_def.observe(spectrum.i_and[s], oracle::harsanyi_and_direct(v_and, s));
      if (s != 0) {
        or_def.observe(spectrum.i_or[s], oracle::harsanyi_or_direct(v_or, s));
        interaction_sum += spectrum.total(s);
      }
      matching.observe(reconstruct_value(spectrum, s), table(s));
    }
    sum_rule.observe(interaction_sum, table.grand() - table.baseline());

    const std::vector<double> phi = shapley_from_interactions(spectrum);
    const std::vector<double> bz = banzhaf_from_interactions(spectrum);
    double phi_sum = 0.0;
    for (unsigned i = 0; i < n; ++i) {
      shapley.observe(phi[i], shapley_ref[i]);
      banzhaf.observe(bz[i], banzhaf_ref[i]);
      singleton.observe(
          coalition_attribution(spectrum, CoalitionMask(Mask{1} << i, n)),
          phi[i]);
      phi_sum += phi[i];
    }
    efficiency_global.observe(phi_sum, table.grand() - table.baseline());

    for (Mask bits : coalitions) {
      const CoalitionMask s(bits, n);
      const ConflictReport report = conflict_decomposition(spectrum, s);
      conflict.observe(report.varphi,
                       report.shapley_sum - report.partial_overlap_residual);
      double term_sum = 0.0;
      for (const auto& term : report.terms) term_sum += term.contribution;
      breakdown.observe(term_sum, report.partial_overlap_residual);
      for (unsigned i : s.members()) {
        const VariableShare share = per_variable_decomposition(spectrum, s, i);
        per_variable.observe(share.share + share.residual, phi[i]);
      }
      const EfficiencyReport eff = efficiency_report(spectrum, s);
      efficiency.observe(eff.total, eff.target);
    }
  }

  // Additivity: split the table into two random games with random gammas.
  Tracker additivity_spectrum("additivity_spectrum", tol);
  Tracker additivity_coalition("additivity_coalition_attribution", tol);
  {
    const ValueTable part1(random_lattice(n, rng));
    const ValueTable part2(table.values() - part1.values());
    const ValueTable sum(part1.values() + part2.values());
    const LatticeVector gamma1 = random_lattice(n, rng);
    const LatticeVector gamma2 = random_lattice(n, rng);
    const auto spec1 =
        compute_spectrum(AndOrSplit(part1, gamma1, SplitMode::Learned));
    const auto spec2 =
        compute_spectrum(AndOrSplit(part2, gamma2, SplitMode::Learned));
    const auto spec_sum = compute_spectrum(
        AndOrSplit(sum, gamma1 + gamma2, SplitMode::Learned));
    for (Mask s = 0; s <= full; ++s) {
      additivity_spectrum.observe(spec_sum.i_and[s],
                                  spec1.i_and[s] + spec2.i_and[s]);
      additivity_spectrum.observe(spec_sum.i_or[s],
                                  spec1.i_or[s] + spec2.i_or[s]);
    }
    for (Mask bits : coalitions) {
      const CoalitionMask s(bits, n);
      additivity_coalition.observe(coalition_attribution(spec_sum, s),
                                   coalition_attribution(spec1, s) +
                                       coalition_attribution(spec2, s));
    }
  }

  std::vector<IdentityResult> out;
  for (const Tracker* t :
       {&roundtrip, &mobius_naive, &zeta_naive, &permutation, &optimizer,
        &conservation, &and_def, &or_def, &matching, &sum_rule, &shapley,
        &banzhaf, &efficiency_global, &singleton, &conflict, &breakdown,
        &per_variable, &efficiency, &additivity_spectrum,
        &additivity_coalition}) {
    IdentityResult r = t->result();
    if (r.checks > 0) out.push_back(std::move(r));
  }
  return out;
}

}  // namespace harsanyi
