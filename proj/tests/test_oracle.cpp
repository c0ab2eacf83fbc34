#include <doctest.h>

#include "harsanyi/error.hpp"
#include "harsanyi/oracle.hpp"
#include "harsanyi/verify.hpp"
#include "support.hpp"

using namespace harsanyi;

TEST_CASE("direct shapley on the two-variable game") {
  const ValueTable t = testing::table_of(2, {0, 1, 1, 3});
  CHECK(oracle::shapley_direct(t, 0) == 1.5);
  CHECK(oracle::shapley_direct(t, 1) == 1.5);
  CHECK(oracle::banzhaf_direct(t, 0) == 1.5);
  const ValueTable or_game = testing::table_of(2, {0, 1, 1, 1});
  CHECK(oracle::banzhaf_direct(or_game, 0) == 0.5);
  const ValueTable constant(LatticeVector(3, std::vector<double>(8, 4.0)));
  CHECK(oracle::banzhaf_direct(constant, 1) == 0.0);
}

TEST_CASE("weighted sum equals the permutation average") {
  std::mt19937_64 rng(51);
  for (unsigned n = 1; n <= 6; ++n) {
    const ValueTable t = testing::random_table(n, rng);
    const auto want = testing::brute_shapley(t);
    for (unsigned i = 0; i < n; ++i) {
      const double direct = oracle::shapley_direct(t, i);
      const double perm = oracle::shapley_permutation(t, i);
      CHECK(std::abs(direct - perm) <= 1e-12 * testing::scale_of(t));
      CHECK(std::abs(direct - want[i]) <= 1e-12 * testing::scale_of(t));
    }
  }
}

TEST_CASE("oracle interactions match the brute spectrum") {
  std::mt19937_64 rng(52);
  for (unsigned n = 1; n <= 6; ++n) {
    const ValueTable t = testing::random_table(n, rng);
    const LatticeVector gamma = testing::random_vector(n, rng);
    const AndOrSplit split(t, gamma, SplitMode::Learned);
    const auto want = testing::brute_spectrum(t, gamma);
    const LatticeVector v_and = split.v_and();
    const LatticeVector v_or = split.v_or();
    for (Mask s = 0; s < (Mask{1} << n); ++s) {
      CHECK(oracle::harsanyi_and_direct(v_and, s) ==
            doctest::Approx(want.i_and[s]));
      if (s != 0) {
        CHECK(oracle::harsanyi_or_direct(v_or, s) ==
              doctest::Approx(want.i_or[s]));
      }
    }
  }
}

TEST_CASE("naive transforms") {
  std::mt19937_64 rng(53);
  for (unsigned n = 1; n <= 6; ++n) {
    const LatticeVector f = testing::random_vector(n, rng);
    const auto m = testing::brute_mobius(testing::to_std(f));
    const auto z = testing::brute_zeta(testing::to_std(f));
    const LatticeVector om = oracle::mobius_naive(f);
    const LatticeVector oz = oracle::zeta_naive(f);
    for (std::size_t k = 0; k < m.size(); ++k) {
      CHECK(om[static_cast<Mask>(k)] == doctest::Approx(m[k]));
      CHECK(oz[static_cast<Mask>(k)] == doctest::Approx(z[k]));
    }
  }
}

TEST_CASE("oracle caps") {
  const ValueTable big(LatticeVector(13));
  try {
    oracle::shapley_direct(big, 0);
    FAIL("expected CapExceeded");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::CapExceeded);
  }
  const ValueTable nine(LatticeVector(9));
  CHECK_THROWS_AS(oracle::shapley_permutation(nine, 0), Error);
  const ValueTable two = testing::table_of(2, {0, 1, 1, 3});
  CHECK_THROWS_AS(oracle::shapley_direct(two, 2), Error);
  CHECK_THROWS_AS(oracle::harsanyi_or_direct(two.values(), 0), Error);
}

TEST_CASE("verify passes on fixtures, including a hand-edited table") {
  std::mt19937_64 rng(54);
  std::vector<ValueTable> tables{testing::table_of(2, {0, 1, 1, 3}),
                                 synth_game(random_planted_spec(6, 3, 2, 2)),
                                 testing::random_table(9, rng)};
  LatticeVector edited = tables[1].values();
  edited[5] += 1234.5;
  tables.emplace_back(edited);
  for (const ValueTable& t : tables) {
    VerifyOptions options;
    options.gamma_draws = 5;
    for (const IdentityResult& r : verify_identities(t, options)) {
      INFO(r.name << " max error " << r.max_error);
      CHECK(r.passed);
      CHECK(r.checks > 0);
    }
  }
}

TEST_CASE("verify refuses tables above the oracle cap") {
  try {
    verify_identities(ValueTable(LatticeVector(13)), {});
    FAIL("expected CapExceeded");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::CapExceeded);
  }
}
