#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "harsanyi/lattice.hpp"

namespace harsanyi {

// v(S) for every subset S of N, indexed by mask. values[0] is the baseline
// v(empty), values[full] the unmasked output v(N).
class ValueTable {
 public:
  // Throws Error(NonFinite) on any NaN/Inf value, Error(BadLength) when
  // labels are present but not exactly n of them.
  explicit ValueTable(LatticeVector values,
                      std::vector<std::string> labels = {});

  unsigned n() const noexcept { return values_.n(); }
  const LatticeVector& values() const noexcept { return values_; }
  double operator()(Mask s) const { return values_[s]; }
  double baseline() const { return values_[0]; }
  double grand() const { return values_[full_mask(n())]; }
  double max_abs() const noexcept { return values_.max_abs(); }

  const std::vector<std::string>& labels() const noexcept { return labels_; }
  // labels()[i] when present, "x<i>" otherwise.
  std::string label(unsigned i) const;

  friend bool operator==(const ValueTable&, const ValueTable&) = default;

 private:
  LatticeVector values_;
  std::vector<std::string> labels_;
};

enum class TableFormat { Json, Csv };

std::optional<TableFormat> parse_table_format(std::string_view text);

// JSON: {"n": int, "values": [2^n numbers], "labels": [n strings]?}.
// CSV: optional header, rows "mask,value". n comes from n_override when
// given, otherwise from the highest mask seen (bit width, at least 1).
ValueTable load_value_table(std::istream& source, TableFormat format,
                            std::optional<unsigned> n_override = {});
ValueTable load_value_table_file(const std::string& path, TableFormat format,
                                 std::optional<unsigned> n_override = {});

// Canonical JSON text of the table (the same document load_value_table
// accepts), terminated by a newline.
std::string serialize_value_table(const ValueTable& table);

enum class GameKind { Linear, PlantedAnd, PlantedOr, PlantedMixed, Random };

std::optional<GameKind> parse_game_kind(std::string_view text);
std::string_view to_string(GameKind kind);

struct PlantedTerm {
  Mask mask = 0;
  double coefficient = 0.0;

  friend bool operator==(const PlantedTerm&, const PlantedTerm&) = default;
};

struct GameSpec {
  GameKind kind = GameKind::Random;
  unsigned n = 1;
  std::uint64_t seed = 0;
  // Linear kind; drawn uniformly from [-1, 1] when empty.
  std::vector<double> weights;
  // Terms of the form c * [S contains T].
  std::vector<PlantedTerm> and_terms;
  // Terms of the form c * [S intersects T].
  std::vector<PlantedTerm> or_terms;
};

// Builds the table described by spec. Throws Error(EmptyPlantedMask) when a
// planted term has mask 0, Error(MaskOutOfRange) when it exceeds n bits,
// Error(InvalidConfig) on a weight count other than n.
ValueTable synth_game(const GameSpec& spec);

// Draws num_and AND terms and num_or OR terms with distinct nonempty masks
// and coefficients uniform in [coef_lo, coef_hi], deterministically from seed.
GameSpec random_planted_spec(unsigned n, std::size_t num_and,
                             std::size_t num_or, std::uint64_t seed,
                             double coef_lo = 0.5, double coef_hi = 2.0);

// "0,2" -> 0b101. Throws IndexOutOfRange, DuplicateIndex, EmptyCoalition or
// ParseError.
CoalitionMask parse_coalition(std::string_view text, unsigned n);

// "{0,2}" style rendering of a mask.
std::string format_coalition(Mask mask, unsigned n);

// Uniform double in [lo, hi) from the top 53 bits of a 64-bit draw; used
// instead of std::uniform_real_distribution so tables are bit-identical across
// standard libraries.
double uniform_from_bits(std::uint64_t bits, double lo, double hi);

}  // namespace harsanyi
