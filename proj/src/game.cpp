#include "harsanyi/game.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <random>
#include <set>
#include <sstream>

#include "harsanyi/error.hpp"
#include "harsanyi/json_writer.hpp"
#include "json.hpp"

namespace harsanyi {

namespace {

std::string_view trim(std::string_view s) {
  const auto not_space = [](char c) {
    return c != ' ' && c != '\t' && c != '\r' && c != '\n';
  };
  while (!s.empty() && !not_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && !not_space(s.back())) s.remove_suffix(1);
  return s;
}

std::optional<std::uint64_t> parse_uint(std::string_view s) {
  s = trim(s);
  std::uint64_t out = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) {
    return std::nullopt;
  }
  return out;
}

std::optional<double> parse_double(std::string_view s) {
  s = trim(s);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double out = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  if (ec == std::errc::result_out_of_range) {
    return std::numeric_limits<double>::infinity();
  }
  if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) {
    return std::nullopt;
  }
  return out;
}

ValueTable load_json(std::istream& source) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(source);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::ParseError, std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) {
    throw Error(ErrorKind::ParseError, "value table must be a JSON object");
  }
  if (!doc.contains("n") || !doc["n"].is_number_integer()) {
    throw Error(ErrorKind::ParseError, "field \"n\" must be an integer");
  }
  const auto n_signed = doc["n"].get<std::int64_t>();
  if (n_signed < 1 || n_signed > static_cast<std::int64_t>(variable_cap())) {
    throw Error(ErrorKind::CapExceeded,
                "variable count " + std::to_string(n_signed) +
                    " outside [1, " + std::to_string(variable_cap()) + "]");
  }
  const auto n = static_cast<unsigned>(n_signed);
  if (!doc.contains("values") || !doc["values"].is_array()) {
    throw Error(ErrorKind::ParseError, "field \"values\" must be an array");
  }
  const auto& values = doc["values"];
  if (values.size() != lattice_size(n)) {
    throw Error(ErrorKind::BadLength,
                "expected " + std::to_string(lattice_size(n)) +
                    " values for n=" + std::to_string(n) + ", got " +
                    std::to_string(values.size()));
  }
  std::vector<double> data;
  data.reserve(values.size());
  for (std::size_t k = 0; k < values.size(); ++k) {
    if (!values[k].is_number()) {
      throw Error(ErrorKind::ParseError,
                  "values[" + std::to_string(k) + "] is not a number");
    }
    data.push_back(values[k].get<double>());
  }
  std::vector<std::string> labels;
  if (doc.contains("labels") && !doc["labels"].is_null()) {
    if (!doc["labels"].is_array()) {
      throw Error(ErrorKind::ParseError, "field \"labels\" must be an array");
    }
    for (const auto& label : doc["labels"]) {
      if (!label.is_string()) {
        throw Error(ErrorKind::ParseError, "labels must be strings");
      }
      labels.push_back(label.get<std::string>());
    }
  }
  return ValueTable(LatticeVector(n, std::move(data)), std::move(labels));
}

ValueTable load_csv(std::istream& source, std::optional<unsigned> n_override) {
  std::vector<std::pair<std::uint64_t, double>> rows;
  std::string line;
  std::size_t line_no = 0;
  bool header_allowed = true;
  while (std::getline(source, line)) {
    ++line_no;
    const std::string_view text = trim(line);
    if (text.empty() || text.front() == '#') continue;
    const auto comma = text.find(',');
    if (comma == std::string_view::npos ||
        text.find(',', comma + 1) != std::string_view::npos) {
      throw Error(ErrorKind::ParseError,
                  "line " + std::to_string(line_no) +
                      ": expected exactly two fields \"mask,value\"");
    }
    const auto mask = parse_uint(text.substr(0, comma));
    if (!mask) {
      if (header_allowed) {
        header_allowed = false;
        continue;
      }
      throw Error(ErrorKind::ParseError, "line " + std::to_string(line_no) +
                                             ": mask is not an integer");
    }
    header_allowed = false;
    const auto value = parse_double(text.substr(comma + 1));
    if (!value) {
      throw Error(ErrorKind::ParseError, "line " + std::to_string(line_no) +
                                             ": value is not a number");
    }
    if (!std::isfinite(*value)) {
      throw Error(ErrorKind::NonFinite,
                  "line " + std::to_string(line_no) + ": non-finite value");
    }
    rows.emplace_back(*mask, *value);
  }
  if (rows.empty()) {
    throw Error(ErrorKind::BadLength, "CSV table has no rows");
  }

  unsigned n = 0;
  if (n_override) {
    n = *n_override;
    check_variable_count(n);
  } else {
    std::uint64_t max_mask = 0;
    for (const auto& row : rows) max_mask = std::max(max_mask, row.first);
    n = std::max(1u, static_cast<unsigned>(std::bit_width(max_mask)));
    check_variable_count(n);
  }

  const std::size_t size = lattice_size(n);
  std::vector<double> data(size, 0.0);
  std::vector<bool> seen(size, false);
  for (const auto& [mask, value] : rows) {
    if (mask >= size) {
      throw Error(ErrorKind::MaskOutOfRange,
                  "mask " + std::to_string(mask) + " out of range for n=" +
                      std::to_string(n));
    }
    if (seen[mask]) {
      throw Error(ErrorKind::DuplicateMask,
                  "mask " + std::to_string(mask) + " appears twice");
    }
    seen[mask] = true;
    data[mask] = value;
  }
  for (std::size_t mask = 0; mask < size; ++mask) {
    if (!seen[mask]) {
      throw Error(ErrorKind::MissingMask,
                  "mask " + std::to_string(mask) + " has no value");
    }
  }
  return ValueTable(LatticeVector(n, std::move(data)));
}

void check_terms(const std::vector<PlantedTerm>& terms, unsigned n) {
  for (const auto& term : terms) {
    if (term.mask == 0) {
      throw Error(ErrorKind::EmptyPlantedMask,
                  "planted interaction masks must be nonempty");
    }
    if (!is_subset(term.mask, full_mask(n))) {
      throw Error(ErrorKind::MaskOutOfRange,
                  "planted mask " + std::to_string(term.mask) +
                      " out of range for n=" + std::to_string(n));
    }
    if (!std::isfinite(term.coefficient)) {
      throw Error(ErrorKind::NonFinite, "planted coefficient is not finite");
    }
  }
}

}  // namespace

ValueTable::ValueTable(LatticeVector values, std::vector<std::string> labels)
    : values_(std::move(values)), labels_(std::move(labels)) {
  if (!values_.all_finite()) {
    throw Error(ErrorKind::NonFinite, "value table contains NaN or Inf");
  }
  if (!labels_.empty() && labels_.size() != values_.n()) {
    throw Error(ErrorKind::BadLength,
                "expected " + std::to_string(values_.n()) + " labels, got " +
                    std::to_string(labels_.size()));
  }
}

std::string ValueTable::label(unsigned i) const {
  if (i < labels_.size()) return labels_[i];
  return "x" + std::to_string(i);
}

std::optional<TableFormat> parse_table_format(std::string_view text) {
  if (text == "json") return TableFormat::Json;
  if (text == "csv") return TableFormat::Csv;
  return std::nullopt;
}

ValueTable load_value_table(std::istream& source, TableFormat format,
                            std::optional<unsigned> n_override) {
  if (format == TableFormat::Csv) return load_csv(source, n_override);
  ValueTable table = load_json(source);
  if (n_override && *n_override != table.n()) {
    throw Error(ErrorKind::BadLength,
                "--n " + std::to_string(*n_override) +
                    " disagrees with the table's n=" +
                    std::to_string(table.n()));
  }
  return table;
}

ValueTable load_value_table_file(const std::string& path, TableFormat format,
                                 std::optional<unsigned> n_override) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, "cannot open " + path);
  return load_value_table(in, format, n_override);
}

std::string serialize_value_table(const ValueTable& table) {
  nlohmann::ordered_json doc;
  doc["n"] = table.n();
  auto values = nlohmann::ordered_json::array();
  for (double v : table.values().values()) values.push_back(v);
  doc["values"] = std::move(values);
  if (!table.labels().empty()) doc["labels"] = table.labels();
  return dump_json(doc, -1) + "\n";
}

std::optional<GameKind> parse_game_kind(std::string_view text) {
  if (text == "linear") return GameKind::Linear;
  if (text == "planted-and") return GameKind::PlantedAnd;
  if (text == "planted-or") return GameKind::PlantedOr;
  if (text == "planted-mixed") return GameKind::PlantedMixed;
  if (text == "random") return GameKind::Random;
  return std::nullopt;
}

std::string_view to_string(GameKind kind) {
  switch (kind) {
    case GameKind::Linear: return "linear";
    case GameKind::PlantedAnd: return "planted-and";
    case GameKind::PlantedOr: return "planted-or";
    case GameKind::PlantedMixed: return "planted-mixed";
    case GameKind::Random: return "random";
  }
  return "unknown";
}

double uniform_from_bits(std::uint64_t bits, double lo, double hi) {
  const double unit = static_cast<double>(bits >> 11) * 0x1.0p-53;
  return lo + (hi - lo) * unit;
}

ValueTable synth_game(const GameSpec& spec) {
  check_variable_count(spec.n);
  const unsigned n = spec.n;
  LatticeVector values(n);
  const std::size_t size = lattice_size(n);

  switch (spec.kind) {
    case GameKind::Linear: {
      std::vector<double> weights = spec.weights;
      if (weights.empty()) {
        std::mt19937_64 rng(spec.seed);
        for (unsigned i = 0; i < n; ++i) {
          weights.push_back(uniform_from_bits(rng(), -1.0, 1.0));
        }
      }
      if (weights.size() != n) {
        throw Error(ErrorKind::InvalidConfig,
                    "linear game needs " + std::to_string(n) +
                        " weights, got " + std::to_string(weights.size()));
      }
      for (std::size_t m = 0; m < size; ++m) {
        double sum = 0.0;
        for (unsigned i = 0; i < n; ++i) {
          if (contains(static_cast<Mask>(m), i)) sum += weights[i];
        }
        values[static_cast<Mask>(m)] = sum;
      }
      break;
    }
    case GameKind::PlantedAnd:
    case GameKind::PlantedOr:
    case GameKind::PlantedMixed: {
      const bool use_and = spec.kind != GameKind::PlantedOr;
      const bool use_or = spec.kind != GameKind::PlantedAnd;
      if (use_and) check_terms(spec.and_terms, n);
      if (use_or) check_terms(spec.or_terms, n);
      if (!use_and && !spec.and_terms.empty()) {
        throw Error(ErrorKind::InvalidConfig,
                    "planted-or games take no AND terms");
      }
      if (!use_or && !spec.or_terms.empty()) {
        throw Error(ErrorKind::InvalidConfig,
                    "planted-and games take no OR terms");
      }
      for (std::size_t m = 0; m < size; ++m) {
        const auto s = static_cast<Mask>(m);
        double sum = 0.0;
        for (const auto& term : spec.and_terms) {
          if (is_subset(term.mask, s)) sum += term.coefficient;
        }
        for (const auto& term : spec.or_terms) {
          if ((term.mask & s) != 0) sum += term.coefficient;
        }
        values[s] = sum;
      }
      break;
    }
    case GameKind::Random: {
      std::mt19937_64 rng(spec.seed);
      for (std::size_t m = 0; m < size; ++m) {
        values[static_cast<Mask>(m)] = uniform_from_bits(rng(), -1.0, 1.0);
      }
      break;
    }
  }
  return ValueTable(std::move(values));
}

GameSpec random_planted_spec(unsigned n, std::size_t num_and,
                             std::size_t num_or, std::uint64_t seed,
                             double coef_lo, double coef_hi) {
  check_variable_count(n);
  if (num_and + num_or > lattice_size(n) - 1) {
    throw Error(ErrorKind::InvalidConfig,
                "cannot plant " + std::to_string(num_and + num_or) +
                    " distinct masks with n=" + std::to_string(n));
  }
  GameSpec spec;
  spec.n = n;
  spec.seed = seed;
  spec.kind = num_or == 0   ? GameKind::PlantedAnd
              : num_and == 0 ? GameKind::PlantedOr
                             : GameKind::PlantedMixed;
  std::mt19937_64 rng(seed);
  std::set<Mask> used;
  const auto draw = [&]() {
    PlantedTerm term;
    do {
      term.mask = static_cast<Mask>(rng() & full_mask(n));
    } while (term.mask == 0 || used.count(term.mask) != 0);
    used.insert(term.mask);
    term.coefficient = uniform_from_bits(rng(), coef_lo, coef_hi);
    return term;
  };
  for (std::size_t k = 0; k < num_and; ++k) spec.and_terms.push_back(draw());
  for (std::size_t k = 0; k < num_or; ++k) spec.or_terms.push_back(draw());
  return spec;
}

CoalitionMask parse_coalition(std::string_view text, unsigned n) {
  text = trim(text);
  if (text.empty()) {
    throw Error(ErrorKind::EmptyCoalition, "coalition lists no variables");
  }
  Mask bits = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto comma = text.find(',', start);
    const auto end = comma == std::string_view::npos ? text.size() : comma;
    const auto token = trim(text.substr(start, end - start));
    const auto index = parse_uint(token);
    if (!index) {
      throw Error(ErrorKind::ParseError,
                  "coalition entry \"" + std::string(token) +
                      "\" is not a variable index");
    }
    if (*index >= n) {
      throw Error(ErrorKind::IndexOutOfRange,
                  "variable " + std::to_string(*index) +
                      " out of range for n=" + std::to_string(n));
    }
    const Mask bit = Mask{1} << *index;
    if (bits & bit) {
      throw Error(ErrorKind::DuplicateIndex,
                  "variable " + std::to_string(*index) + " listed twice");
    }
    bits |= bit;
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return CoalitionMask(bits, n);
}

std::string format_coalition(Mask mask, unsigned n) {
  std::string out = "{";
  bool first = true;
  for (unsigned i = 0; i < n; ++i) {
    if (!contains(mask, i)) continue;
    if (!first) out += ',';
    first = false;
    out += std::to_string(i);
  }
  return out + "}";
}

}  // namespace harsanyi
