#include "harsanyi/oracle.hpp"

#include <algorithm>
#include <numeric>
#include <string>
#include <vector>

#include "harsanyi/error.hpp"

namespace harsanyi::oracle {

namespace {

void check_cap(unsigned n, unsigned cap) {
  if (n > cap) {
    throw Error(ErrorKind::CapExceeded,
                "reference computation limited to n <= " +
                    std::to_string(cap) + ", got n=" + std::to_string(n));
  }
}

void check_variable(unsigned n, unsigned i) {
  if (i >= n) {
    throw Error(ErrorKind::IndexOutOfRange,
                "variable " + std::to_string(i) + " out of range for n=" +
                    std::to_string(n));
  }
}

unsigned count_bits(Mask m) {
  unsigned c = 0;
  for (; m != 0; m >>= 1) c += m & 1u;
  return c;
}

double binomial(unsigned n, unsigned k) {
  double out = 1.0;
  for (unsigned j = 1; j <= k; ++j) {
    out = out * static_cast<double>(n - k + j) / static_cast<double>(j);
  }
  return out;
}

double alternating_sign(unsigned exponent) {
  return exponent % 2 == 0 ? 1.0 : -1.0;
}

}  // namespace

double shapley_direct(const ValueTable& table, unsigned i) {
  const unsigned n = table.n();
  check_cap(n, kOracleCap);
  check_variable(n, i);
  const Mask bit = Mask{1} << i;
  double sum = 0.0;
  for (Mask s = 0; s < (Mask{1} << n); ++s) {
    if (s & bit) continue;
    const double weight = 1.0 / (n * binomial(n - 1, count_bits(s)));
    sum += weight * (table(s | bit) - table(s));
  }
  return sum;
}

double shapley_permutation(const ValueTable& table, unsigned i) {
  const unsigned n = table.n();
  check_cap(n, kPermutationCap);
  check_variable(n, i);
  std::vector<unsigned> order(n);
  std::iota(order.begin(), order.end(), 0u);
  double sum = 0.0;
  double count = 0.0;
  do {
    Mask before = 0;
    for (unsigned player : order) {
      if (player == i) break;
      before |= Mask{1} << player;
    }
    sum += table(before | (Mask{1} << i)) - table(before);
    count += 1.0;
  } while (std::next_permutation(order.begin(), order.end()));
  return sum / count;
}

double banzhaf_direct(const ValueTable& table, unsigned i) {
  const unsigned n = table.n();
  check_cap(n, kOracleCap);
  check_variable(n, i);
  const Mask bit = Mask{1} << i;
  double sum = 0.0;
  for (Mask s = 0; s < (Mask{1} << n); ++s) {
    if (s & bit) continue;
    sum += table(s | bit) - table(s);
  }
  return sum / static_cast<double>(Mask{1} << (n - 1));
}

double harsanyi_and_direct(const LatticeVector& v_and, Mask s) {
  const unsigned n = v_and.n();
  check_cap(n, kOracleCap);
  const unsigned size_s = count_bits(s);
  double sum = 0.0;
  for (Mask l = 0; l < (Mask{1} << n); ++l) {
    if ((l & ~s) != 0) continue;
    sum += alternating_sign(size_s - count_bits(l)) * v_and[l];
  }
  return sum;
}

double harsanyi_or_direct(const LatticeVector& v_or, Mask s) {
  const unsigned n = v_or.n();
  check_cap(n, kOracleCap);
  if (s == 0) {
    throw Error(ErrorKind::EmptyCoalition,
                "OR interactions are defined for nonempty sets only");
  }
  const Mask full = (Mask{1} << n) - 1;
  const unsigned size_s = count_bits(s);
  double sum = 0.0;
  for (Mask l = 0; l < (Mask{1} << n); ++l) {
    if ((l & ~s) != 0) continue;
    sum += alternating_sign(size_s - count_bits(l)) * v_or[full & ~l];
  }
  return -sum;
}

LatticeVector mobius_naive(const LatticeVector& f) {
  check_cap(f.n(), kOracleCap);
  LatticeVector out(f.n());
  for (Mask s = 0; s < (Mask{1} << f.n()); ++s) {
    out[s] = harsanyi_and_direct(f, s);
  }
  return out;
}

LatticeVector zeta_naive(const LatticeVector& g) {
  const unsigned n = g.n();
  check_cap(n, kOracleCap);
  LatticeVector out(n);
  for (Mask s = 0; s < (Mask{1} << n); ++s) {
    double sum = 0.0;
    for (Mask l = 0; l < (Mask{1} << n); ++l) {
      if ((l & ~s) == 0) sum += g[l];
    }
    out[s] = sum;
  }
  return out;
}

}  // namespace harsanyi::oracle
