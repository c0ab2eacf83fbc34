#include <doctest.h>

#include <bit>

#include "harsanyi/interactions.hpp"
#include "support.hpp"

using namespace harsanyi;

namespace {

const ValueTable kGame = testing::table_of(2, {0, 1, 1, 3});
const ValueTable kOrGame = testing::table_of(2, {0, 1, 1, 1});

std::vector<AndOrSplit> splits_for(const ValueTable& t, std::mt19937_64& rng,
                                   int draws) {
  std::vector<AndOrSplit> out;
  for (SplitMode m :
       {SplitMode::AndOnly, SplitMode::OrOnly, SplitMode::Balanced}) {
    out.push_back(split_fixed(t, m));
  }
  for (int k = 0; k < draws; ++k) {
    out.emplace_back(t, testing::random_vector(t.n(), rng), SplitMode::Learned);
  }
  return out;
}

}  // namespace

TEST_CASE("and interactions of planted and linear games") {
  GameSpec spec;
  spec.kind = GameKind::PlantedAnd;
  spec.n = 3;
  spec.and_terms = {{0b011, 1.0}};
  const LatticeVector i_and =
      and_interactions(split_fixed(synth_game(spec), SplitMode::AndOnly));
  for (Mask s = 1; s < 8; ++s) CHECK(i_and[s] == (s == 0b011 ? 1.0 : 0.0));

  GameSpec lin;
  lin.kind = GameKind::Linear;
  lin.n = 4;
  lin.weights = {0.5, -1.0, 2.0, 3.0};
  const LatticeVector li =
      and_interactions(split_fixed(synth_game(lin), SplitMode::AndOnly));
  for (Mask s = 1; s < 16; ++s) {
    if (cardinality(s) == 1) {
      CHECK(li[s] == lin.weights[std::countr_zero(s)]);
    } else {
      CHECK(li[s] == 0.0);
    }
  }

  std::mt19937_64 rng(31);
  const LatticeVector zero_and =
      and_interactions(split_fixed(testing::random_table(4, rng),
                                   SplitMode::OrOnly));
  for (double x : zero_and.values()) CHECK(x == 0.0);
}

TEST_CASE("or interactions") {
  const LatticeVector i_or =
      or_interactions(split_fixed(kOrGame, SplitMode::OrOnly));
  CHECK(i_or[0b11] == 1.0);
  CHECK(i_or[0b01] == 0.0);
  CHECK(i_or[0b10] == 0.0);
  CHECK(i_or[0] == 0.0);

  const LatticeVector none =
      or_interactions(split_fixed(kGame, SplitMode::AndOnly));
  for (double x : none.values()) CHECK(x == 0.0);

  // Balanced on [0,1,1,3]: v_or = v/2, so I_or = -mobius(reflect(v/2)).
  const LatticeVector bal =
      or_interactions(split_fixed(kGame, SplitMode::Balanced));
  const auto want = testing::brute_mobius({1.5, 0.5, 0.5, 0.0});
  for (Mask s = 1; s < 4; ++s) CHECK(bal[s] == doctest::Approx(-want[s]));
}

TEST_CASE("spectra match the brute definitions") {
  std::mt19937_64 rng(32);
  for (unsigned n = 1; n <= 8; ++n) {
    const ValueTable t = testing::random_table(n, rng);
    for (const AndOrSplit& split : splits_for(t, rng, 3)) {
      const InteractionSpectrum got = compute_spectrum(split);
      const auto want = testing::brute_spectrum(t, split.gamma());
      const double tol = 1e-10 * testing::scale_of(t);
      for (std::size_t m = 0; m < want.i_and.size(); ++m) {
        const auto s = static_cast<Mask>(m);
        CHECK(std::abs(got.i_and[s] - want.i_and[m]) <= tol);
        CHECK(std::abs(got.i_or[s] - want.i_or[m]) <= tol);
      }
      CHECK(got.i_and[0] == split.v_and()[0]);
      CHECK(got.i_or[0] == 0.0);
    }
  }
}

TEST_CASE("zeta of the and spectrum gives back v_and") {
  std::mt19937_64 rng(33);
  const ValueTable t = testing::random_table(7, rng);
  const AndOrSplit split(t, testing::random_vector(7, rng), SplitMode::Learned);
  const LatticeVector back = zeta_transform(compute_spectrum(split).i_and);
  const LatticeVector v_and = split.v_and();
  for (std::size_t m = 0; m < back.size(); ++m) {
    CHECK(std::abs(back[static_cast<Mask>(m)] - v_and[static_cast<Mask>(m)]) <=
          1e-10);
  }
}

TEST_CASE("reconstruction of small games") {
  const auto or_spec = compute_spectrum(split_fixed(kOrGame, SplitMode::OrOnly));
  CHECK(reconstruct_value(or_spec, 0b11) == 1.0);
  CHECK(reconstruct_value(or_spec, 0) == 0.0);

  std::mt19937_64 rng(34);
  for (int k = 0; k < 100; ++k) {
    const auto spec = compute_spectrum(
        AndOrSplit(kGame, testing::random_vector(2, rng), SplitMode::Learned));
    for (Mask s = 0; s < 4; ++s) {
      CHECK(reconstruct_value(spec, s) == doctest::Approx(kGame(s)));
    }
    CHECK(reconstruct_value(spec, 0) == kGame.baseline());
  }
}

TEST_CASE("universal matching and the sum rule") {
  std::mt19937_64 rng(35);
  for (unsigned n = 1; n <= 10; ++n) {
    const ValueTable t = testing::random_table(n, rng);
    const double tol = 1e-9 * testing::scale_of(t);
    OptimizerConfig c;
    c.max_iters = 200;
    std::vector<AndOrSplit> splits = splits_for(t, rng, 5);
    splits.push_back(optimize_gamma(t, c).split);
    for (const AndOrSplit& split : splits) {
      const InteractionSpectrum spec = compute_spectrum(split);
      const LatticeVector all = reconstruct_all(spec);
      double sum = 0.0;
      for (std::size_t m = 0; m < all.size(); ++m) {
        const auto s = static_cast<Mask>(m);
        CHECK(std::abs(all[s] - t(s)) <= tol);
        if (n <= 6) CHECK(std::abs(reconstruct_value(spec, s) - t(s)) <= tol);
        sum += spec.total(s);
      }
      CHECK(std::abs(sum - (t.grand() - t.baseline())) <= tol);
    }
  }
}

TEST_CASE("spectra are additive in the game and gamma") {
  std::mt19937_64 rng(36);
  for (unsigned n = 1; n <= 8; ++n) {
    const ValueTable t1 = testing::random_table(n, rng);
    const ValueTable t2 = testing::random_table(n, rng);
    const LatticeVector g1 = testing::random_vector(n, rng);
    const LatticeVector g2 = testing::random_vector(n, rng);
    const auto s1 = compute_spectrum(AndOrSplit(t1, g1, SplitMode::Learned));
    const auto s2 = compute_spectrum(AndOrSplit(t2, g2, SplitMode::Learned));
    const auto s12 = compute_spectrum(AndOrSplit(
        ValueTable(t1.values() + t2.values()), g1 + g2, SplitMode::Learned));
    for (std::size_t m = 0; m < s1.i_and.size(); ++m) {
      const auto s = static_cast<Mask>(m);
      CHECK(std::abs(s12.i_and[s] - s1.i_and[s] - s2.i_and[s]) <= 1e-10);
      CHECK(std::abs(s12.i_or[s] - s1.i_or[s] - s2.i_or[s]) <= 1e-10);
    }
  }
}
