#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace harsanyi {

// Bit i set <=> variable i (0-indexed) is present.
using Mask = std::uint32_t;

inline constexpr unsigned kDefaultVariableCap = 24;
// Masks are 32-bit and a 2^30 table is already 8 GiB.
inline constexpr unsigned kHardVariableCap = 30;

// Largest accepted variable count. Defaults to kDefaultVariableCap unless
// overridden with set_variable_cap(); safe to read from any thread.
unsigned variable_cap() noexcept;
// Throws Error(InvalidConfig) unless 1 <= cap <= kHardVariableCap.
void set_variable_cap(unsigned cap);
// Throws Error(CapExceeded) unless 1 <= n <= variable_cap().
void check_variable_count(unsigned n);

inline constexpr Mask full_mask(unsigned n) noexcept {
  return n >= 32 ? ~Mask{0} : (Mask{1} << n) - 1;
}
inline constexpr std::size_t lattice_size(unsigned n) noexcept {
  return std::size_t{1} << n;
}
inline constexpr unsigned cardinality(Mask m) noexcept {
  return static_cast<unsigned>(std::popcount(m));
}
inline constexpr bool contains(Mask set, unsigned i) noexcept {
  return (set >> i) & 1u;
}
inline constexpr bool is_subset(Mask sub, Mask set) noexcept {
  return (sub & ~set) == 0;
}

// A subset S of N = {0, ..., n-1}, validated against n.
class CoalitionMask {
 public:
  // Throws Error(IndexOutOfRange) when bits has a bit at position >= n.
  CoalitionMask(Mask bits, unsigned n);

  Mask bits() const noexcept { return bits_; }
  unsigned n() const noexcept { return n_; }
  unsigned size() const noexcept { return cardinality(bits_); }
  bool empty() const noexcept { return bits_ == 0; }
  bool contains(unsigned i) const noexcept {
    return harsanyi::contains(bits_, i);
  }
  std::vector<unsigned> members() const;

  friend bool operator==(const CoalitionMask&, const CoalitionMask&) = default;

 private:
  Mask bits_;
  unsigned n_;
};

// Dense table of 2^n doubles indexed by mask.
class LatticeVector {
 public:
  // All-zero vector. Throws Error(CapExceeded) for n outside [1, cap].
  explicit LatticeVector(unsigned n);
  // Throws Error(BadLength) unless data.size() == 2^n.
  LatticeVector(unsigned n, std::vector<double> data);

  unsigned n() const noexcept { return n_; }
  std::size_t size() const noexcept { return data_.size(); }

  double operator[](Mask m) const { return data_[m]; }
  double& operator[](Mask m) { return data_[m]; }

  std::span<const double> values() const noexcept { return data_; }
  std::span<double> values() noexcept { return data_; }

  bool all_finite() const noexcept;
  double max_abs() const noexcept;

  LatticeVector& operator+=(const LatticeVector& other);
  LatticeVector& operator-=(const LatticeVector& other);
  LatticeVector& operator*=(double scale);

  friend bool operator==(const LatticeVector&, const LatticeVector&) = default;

 private:
  unsigned n_;
  std::vector<double> data_;
};

LatticeVector operator+(LatticeVector lhs, const LatticeVector& rhs);
LatticeVector operator-(LatticeVector lhs, const LatticeVector& rhs);
LatticeVector operator*(double scale, LatticeVector v);

// In-place kernels over a span of length 2^n. One pass per bit, bits in
// ascending order; each pass touches disjoint (m, m | bit) pairs.
void mobius_in_place(std::span<double> f, unsigned n);
void zeta_in_place(std::span<double> g, unsigned n);
// Transposed (superset) variants: g(L) = sum over S >= L of (-1)^{|S|-|L|} f(S)
// and f(L) = sum over S >= L of g(S).
void superset_mobius_in_place(std::span<double> f, unsigned n);
void superset_zeta_in_place(std::span<double> g, unsigned n);

// g(S) = sum_{L subset of S} (-1)^{|S|-|L|} f(L).
LatticeVector mobius_transform(LatticeVector f);
// f(S) = sum_{L subset of S} g(L); inverse of mobius_transform.
LatticeVector zeta_transform(LatticeVector g);
LatticeVector superset_mobius_transform(LatticeVector f);
// h(L) = f(N \ L).
LatticeVector reflect(const LatticeVector& f);

// Calls fn(sub) for every sub subset of set, including 0 and set itself,
// in decreasing mask order.
template <typename Fn>
void for_each_subset(Mask set, Fn&& fn) {
  Mask sub = set;
  while (true) {
    fn(sub);
    if (sub == 0) break;
    sub = (sub - 1) & set;
  }
}

// Calls fn(super) for every super with set <= super <= universe.
template <typename Fn>
void for_each_superset(Mask set, Mask universe, Fn&& fn) {
  const Mask free = universe & ~set;
  for_each_subset(free, [&](Mask extra) { fn(set | extra); });
}

}  // namespace harsanyi
