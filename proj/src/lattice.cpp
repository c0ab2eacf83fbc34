#include "harsanyi/lattice.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <string>

#include "harsanyi/error.hpp"

namespace harsanyi {

namespace {

std::atomic<unsigned> g_variable_cap{kDefaultVariableCap};

void check_span(std::span<const double> f, unsigned n) {
  if (n > kHardVariableCap || f.size() != lattice_size(n)) {
    throw Error(ErrorKind::BadLength,
                "lattice span of length " + std::to_string(f.size()) +
                    " does not match n=" + std::to_string(n));
  }
}

void require_finite(const LatticeVector& v, const char* what) {
  if (!v.all_finite()) {
    throw Error(ErrorKind::NonFinite,
                std::string(what) + " produced a non-finite entry");
  }
}

}  // namespace

unsigned variable_cap() noexcept {
  return g_variable_cap.load(std::memory_order_relaxed);
}

void set_variable_cap(unsigned cap) {
  if (cap < 1 || cap > kHardVariableCap) {
    throw Error(ErrorKind::InvalidConfig,
                "variable cap must lie in [1, " +
                    std::to_string(kHardVariableCap) + "], got " +
                    std::to_string(cap));
  }
  g_variable_cap.store(cap, std::memory_order_relaxed);
}

void check_variable_count(unsigned n) {
  if (n < 1 || n > variable_cap()) {
    throw Error(ErrorKind::CapExceeded,
                "variable count " + std::to_string(n) + " outside [1, " +
                    std::to_string(variable_cap()) + "]");
  }
}

CoalitionMask::CoalitionMask(Mask bits, unsigned n) : bits_(bits), n_(n) {
  if (n < 32 && (bits >> n) != 0) {
    throw Error(ErrorKind::IndexOutOfRange,
                "mask " + std::to_string(bits) + " has bits beyond n=" +
                    std::to_string(n));
  }
}

std::vector<unsigned> CoalitionMask::members() const {
  std::vector<unsigned> out;
  out.reserve(size());
  for (unsigned i = 0; i < n_; ++i) {
    if (contains(i)) out.push_back(i);
  }
  return out;
}

LatticeVector::LatticeVector(unsigned n) : n_(n) {
  check_variable_count(n);
  data_.assign(lattice_size(n), 0.0);
}

LatticeVector::LatticeVector(unsigned n, std::vector<double> data)
    : n_(n), data_(std::move(data)) {
  check_variable_count(n);
  if (data_.size() != lattice_size(n)) {
    throw Error(ErrorKind::BadLength,
                "expected " + std::to_string(lattice_size(n)) +
                    " entries for n=" + std::to_string(n) + ", got " +
                    std::to_string(data_.size()));
  }
}

bool LatticeVector::all_finite() const noexcept {
  return std::all_of(data_.begin(), data_.end(),
                     [](double x) { return std::isfinite(x); });
}

double LatticeVector::max_abs() const noexcept {
  double m = 0.0;
  for (double x : data_) m = std::max(m, std::abs(x));
  return m;
}

LatticeVector& LatticeVector::operator+=(const LatticeVector& other) {
  if (other.n_ != n_) {
    throw Error(ErrorKind::BadLength, "lattice vectors differ in n");
  }
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += other.data_[k];
  return *this;
}

LatticeVector& LatticeVector::operator-=(const LatticeVector& other) {
  if (other.n_ != n_) {
    throw Error(ErrorKind::BadLength, "lattice vectors differ in n");
  }
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= other.data_[k];
  return *this;
}

LatticeVector& LatticeVector::operator*=(double scale) {
  for (double& x : data_) x *= scale;
  return *this;
}

LatticeVector operator+(LatticeVector lhs, const LatticeVector& rhs) {
  lhs += rhs;
  return lhs;
}

LatticeVector operator-(LatticeVector lhs, const LatticeVector& rhs) {
  lhs -= rhs;
  return lhs;
}

LatticeVector operator*(double scale, LatticeVector v) {
  v *= scale;
  return v;
}

void mobius_in_place(std::span<double> f, unsigned n) {
  check_span(f, n);
  const std::size_t size = f.size();
  for (unsigned bit = 0; bit < n; ++bit) {
    const std::size_t step = std::size_t{1} << bit;
    for (std::size_t block = 0; block < size; block += 2 * step) {
      for (std::size_t m = block; m < block + step; ++m) {
        f[m + step] -= f[m];
      }
    }
  }
}

void zeta_in_place(std::span<double> g, unsigned n) {
  check_span(g, n);
  const std::size_t size = g.size();
  for (unsigned bit = 0; bit < n; ++bit) {
    const std::size_t step = std::size_t{1} << bit;
    for (std::size_t block = 0; block < size; block += 2 * step) {
      for (std::size_t m = block; m < block + step; ++m) {
        g[m + step] += g[m];
      }
    }
  }
}

void superset_mobius_in_place(std::span<double> f, unsigned n) {
  check_span(f, n);
  const std::size_t size = f.size();
  for (unsigned bit = 0; bit < n; ++bit) {
    const std::size_t step = std::size_t{1} << bit;
    for (std::size_t block = 0; block < size; block += 2 * step) {
      for (std::size_t m = block; m < block + step; ++m) {
        f[m] -= f[m + step];
      }
    }
  }
}

void superset_zeta_in_place(std::span<double> g, unsigned n) {
  check_span(g, n);
  const std::size_t size = g.size();
  for (unsigned bit = 0; bit < n; ++bit) {
    const std::size_t step = std::size_t{1} << bit;
    for (std::size_t block = 0; block < size; block += 2 * step) {
      for (std::size_t m = block; m < block + step; ++m) {
        g[m] += g[m + step];
      }
    }
  }
}

LatticeVector mobius_transform(LatticeVector f) {
  mobius_in_place(f.values(), f.n());
  require_finite(f, "mobius_transform");
  return f;
}

LatticeVector zeta_transform(LatticeVector g) {
  zeta_in_place(g.values(), g.n());
  require_finite(g, "zeta_transform");
  return g;
}

LatticeVector superset_mobius_transform(LatticeVector f) {
  superset_mobius_in_place(f.values(), f.n());
  require_finite(f, "superset_mobius_transform");
  return f;
}

LatticeVector reflect(const LatticeVector& f) {
  LatticeVector out(f.n());
  const Mask full = full_mask(f.n());
  for (std::size_t m = 0; m < f.size(); ++m) {
    out[static_cast<Mask>(m)] = f[full ^ static_cast<Mask>(m)];
  }
  return out;
}

}  // namespace harsanyi
