#include <doctest.h>

#include <algorithm>
#include <functional>
#include <limits>
#include <sstream>
#include <string>

#include "harsanyi/error.hpp"
#include "harsanyi/game.hpp"
#include "support.hpp"

using namespace harsanyi;

namespace {

ErrorKind kind_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no Error thrown");
  return ErrorKind::Io;
}

ValueTable load(const std::string& text, TableFormat format,
                std::optional<unsigned> n = {}) {
  std::istringstream in(text);
  return load_value_table(in, format, n);
}

}  // namespace

TEST_CASE("json table loads") {
  const ValueTable t = load(R"({"n":2,"values":[0,1,1,3]})", TableFormat::Json);
  CHECK(t.n() == 2);
  CHECK(t.baseline() == 0.0);
  CHECK(t.grand() == 3.0);
  CHECK(t.label(1) == "x1");
}

TEST_CASE("csv table matches json") {
  const ValueTable j = load(R"({"n":2,"values":[0,1,1,3]})", TableFormat::Json);
  CHECK(load("0,0\n1,1\n2,1\n3,3\n", TableFormat::Csv) == j);
  CHECK(load("mask,value\n3,3\n# comment\n1,1\n0,0\n2,1\n", TableFormat::Csv) ==
        j);
}

TEST_CASE("ingestion errors") {
  CHECK(kind_of([] { load(R"({"n":2,"values":[0,1,1]})", TableFormat::Json); }) ==
        ErrorKind::BadLength);
  CHECK(kind_of([] { load("{not json", TableFormat::Json); }) ==
        ErrorKind::ParseError);
  CHECK(kind_of([] { load(R"({"n":30,"values":[]})", TableFormat::Json); }) ==
        ErrorKind::CapExceeded);
  CHECK(kind_of([] { load("0,0\n1,1\n3,3\n", TableFormat::Csv); }) ==
        ErrorKind::MissingMask);
  CHECK(kind_of([] { load("0,0\n1,1\n1,2\n", TableFormat::Csv); }) ==
        ErrorKind::DuplicateMask);
  CHECK(kind_of([] { load("0,0\n1,nan\n", TableFormat::Csv); }) ==
        ErrorKind::NonFinite);
  CHECK(kind_of([] { load("0,0\n1,1\n4,1\n", TableFormat::Csv, 2u); }) ==
        ErrorKind::MaskOutOfRange);
  CHECK(kind_of([] {
          load_value_table_file("/nonexistent/table.json", TableFormat::Json);
        }) == ErrorKind::Io);
}

TEST_CASE("csv n override pads the lattice") {
  const ValueTable t = load("0,0\n1,1\n2,2\n3,3\n", TableFormat::Csv, 2u);
  CHECK(t.n() == 2);
  CHECK(kind_of([] { load("0,0\n1,1\n", TableFormat::Csv, 2u); }) ==
        ErrorKind::MissingMask);
}

TEST_CASE("serialization round trip") {
  std::mt19937_64 rng(3);
  for (unsigned n = 1; n <= 6; ++n) {
    const ValueTable t = testing::random_table(n, rng);
    const ValueTable back = load(serialize_value_table(t), TableFormat::Json);
    CHECK(back == t);
    CHECK(serialize_value_table(back) == serialize_value_table(t));
  }
  const ValueTable labelled(LatticeVector(1, {0.5, -2.25}), {"age"});
  const ValueTable back =
      load(serialize_value_table(labelled), TableFormat::Json);
  CHECK(back == labelled);
  CHECK(back.label(0) == "age");
}

TEST_CASE("linear synth") {
  GameSpec spec;
  spec.kind = GameKind::Linear;
  spec.n = 3;
  spec.weights = {1, 2, 3};
  const ValueTable t = synth_game(spec);
  CHECK(t(0b101) == 4.0);
  CHECK(t.grand() == 6.0);
}

TEST_CASE("planted synth") {
  GameSpec and_spec;
  and_spec.kind = GameKind::PlantedAnd;
  and_spec.n = 3;
  and_spec.and_terms = {{0b011, 1.0}};
  CHECK(testing::to_std(synth_game(and_spec).values()) ==
        std::vector<double>{0, 0, 0, 1, 0, 0, 0, 1});

  GameSpec or_spec;
  or_spec.kind = GameKind::PlantedOr;
  or_spec.n = 2;
  or_spec.or_terms = {{0b11, 1.0}};
  CHECK(testing::to_std(synth_game(or_spec).values()) ==
        std::vector<double>{0, 1, 1, 1});

  and_spec.and_terms = {{0, 1.0}};
  CHECK(kind_of([&] { synth_game(and_spec); }) == ErrorKind::EmptyPlantedMask);
  and_spec.and_terms = {{0b1000, 1.0}};
  CHECK(kind_of([&] { synth_game(and_spec); }) == ErrorKind::MaskOutOfRange);
}

TEST_CASE("planted-and mobius support is the planted set") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const GameSpec spec = random_planted_spec(6, 4, 0, seed);
    const ValueTable t = synth_game(spec);
    const auto g = testing::brute_mobius(testing::to_std(t.values()));
    std::vector<double> want(g.size(), 0.0);
    for (const auto& term : spec.and_terms) want[term.mask] = term.coefficient;
    for (std::size_t m = 0; m < g.size(); ++m) {
      CHECK(std::abs(g[m] - want[m]) <= 1e-12);
    }
  }
}

TEST_CASE("synth is deterministic per seed") {
  for (GameKind kind : {GameKind::Linear, GameKind::Random,
                        GameKind::PlantedMixed}) {
    GameSpec spec = kind == GameKind::PlantedMixed
                        ? random_planted_spec(7, 3, 2, 99)
                        : GameSpec{kind, 7, 99, {}, {}, {}};
    const std::string a = serialize_value_table(synth_game(spec));
    const std::string b = serialize_value_table(synth_game(spec));
    CHECK(a == b);
    spec.seed = 100;
    if (kind != GameKind::PlantedMixed) {
      CHECK(serialize_value_table(synth_game(spec)) != a);
    }
  }
  CHECK(random_planted_spec(8, 3, 2, 5).and_terms ==
        random_planted_spec(8, 3, 2, 5).and_terms);
}

TEST_CASE("random planted spec draws distinct masks in range") {
  const GameSpec spec = random_planted_spec(8, 3, 2, 1);
  std::vector<Mask> masks;
  for (const auto& t : spec.and_terms) masks.push_back(t.mask);
  for (const auto& t : spec.or_terms) masks.push_back(t.mask);
  std::sort(masks.begin(), masks.end());
  CHECK(std::adjacent_find(masks.begin(), masks.end()) == masks.end());
  for (const auto& t : spec.and_terms) {
    CHECK(t.coefficient >= 0.5);
    CHECK(t.coefficient <= 2.0);
  }
}

TEST_CASE("coalition parsing") {
  CHECK(parse_coalition("0,2", 3).bits() == 0b101);
  CHECK(parse_coalition("1", 2).bits() == 0b10);
  CHECK(kind_of([] { parse_coalition("0,3", 3); }) ==
        ErrorKind::IndexOutOfRange);
  CHECK(kind_of([] { parse_coalition("1,1", 3); }) ==
        ErrorKind::DuplicateIndex);
  CHECK(kind_of([] { parse_coalition("", 3); }) == ErrorKind::EmptyCoalition);
  CHECK(kind_of([] { parse_coalition("a", 3); }) == ErrorKind::ParseError);
  CHECK(format_coalition(0b101, 3) == "{0,2}");
}

TEST_CASE("value table rejects non-finite entries") {
  CHECK(kind_of([] {
          ValueTable(LatticeVector(1, {0.0, std::numeric_limits<double>::infinity()}));
        }) == ErrorKind::NonFinite);
  CHECK(kind_of([] { ValueTable(LatticeVector(2), {"a"}); }) ==
        ErrorKind::BadLength);
}
