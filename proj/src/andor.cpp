#include "harsanyi/andor.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <random>
#include <string>

#include "harsanyi/error.hpp"
#include "harsanyi/interactions.hpp"

namespace harsanyi {

namespace {

// Iterations between two checks of the relative best-loss improvement.
constexpr int kConvergenceWindow = 500;
constexpr double kDivergenceFactor = 1e3;

double sign(double x) { return x > 0.0 ? 1.0 : (x < 0.0 ? -1.0 : 0.0); }

double l2_norm(const LatticeVector& v) {
  double sum = 0.0;
  for (double x : v.values()) sum += x * x;
  return std::sqrt(sum);
}

// Maps dual vectors on the AND and OR spectra back to gamma space.
// I_and = M (v/2 + gamma): adjoint is the transposed Mobius pass.
// I_or = M R gamma - M R (v/2): adjoint is R M^T.
LatticeVector loss_adjoint(LatticeVector y_and, LatticeVector y_or) {
  LatticeVector out = superset_mobius_transform(std::move(y_and));
  out += reflect(superset_mobius_transform(std::move(y_or)));
  return out;
}

double spectrum_loss(const InteractionSpectrum& spectrum) {
  double loss = 0.0;
  for (std::size_t m = 1; m < spectrum.i_and.size(); ++m) {
    const auto s = static_cast<Mask>(m);
    loss += std::abs(spectrum.i_and[s]) + std::abs(spectrum.i_or[s]);
  }
  return loss;
}

}  // namespace

std::optional<OptimizerMethod> parse_optimizer_method(std::string_view text) {
  if (text == "primal-dual") return OptimizerMethod::PrimalDual;
  if (text == "subgradient") return OptimizerMethod::Subgradient;
  return std::nullopt;
}

std::string_view to_string(OptimizerMethod method) {
  switch (method) {
    case OptimizerMethod::PrimalDual: return "primal-dual";
    case OptimizerMethod::Subgradient: return "subgradient";
  }
  return "unknown";
}

std::optional<SplitMode> parse_split_mode(std::string_view text) {
  if (text == "and-only") return SplitMode::AndOnly;
  if (text == "or-only") return SplitMode::OrOnly;
  if (text == "balanced") return SplitMode::Balanced;
  if (text == "learned") return SplitMode::Learned;
  return std::nullopt;
}

std::string_view to_string(SplitMode mode) {
  switch (mode) {
    case SplitMode::AndOnly: return "and-only";
    case SplitMode::OrOnly: return "or-only";
    case SplitMode::Balanced: return "balanced";
    case SplitMode::Learned: return "learned";
  }
  return "unknown";
}

AndOrSplit::AndOrSplit(ValueTable table, LatticeVector gamma, SplitMode mode)
    : table_(std::move(table)), gamma_(std::move(gamma)), mode_(mode) {
  if (gamma_.n() != table_.n()) {
    throw Error(ErrorKind::BadLength, "gamma and table differ in n");
  }
  if (!gamma_.all_finite()) {
    throw Error(ErrorKind::NonFinite, "gamma contains NaN or Inf");
  }
}

LatticeVector AndOrSplit::v_and() const {
  LatticeVector out(n());
  const auto& v = table_.values();
  for (std::size_t m = 0; m < out.size(); ++m) {
    const auto s = static_cast<Mask>(m);
    out[s] = 0.5 * v[s] + gamma_[s];
  }
  return out;
}

LatticeVector AndOrSplit::v_or() const {
  LatticeVector out(n());
  const auto& v = table_.values();
  for (std::size_t m = 0; m < out.size(); ++m) {
    const auto s = static_cast<Mask>(m);
    out[s] = 0.5 * v[s] - gamma_[s];
  }
  return out;
}

AndOrSplit split_fixed(const ValueTable& table, SplitMode mode) {
  switch (mode) {
    case SplitMode::AndOnly:
      return AndOrSplit(table, 0.5 * table.values(), mode);
    case SplitMode::OrOnly:
      return AndOrSplit(table, -0.5 * table.values(), mode);
    case SplitMode::Balanced:
      return AndOrSplit(table, LatticeVector(table.n()), mode);
    case SplitMode::Learned:
      break;
  }
  throw Error(ErrorKind::InvalidConfig,
              "split_fixed does not handle the learned mode");
}

double sparsity_loss(const AndOrSplit& split) {
  return spectrum_loss(compute_spectrum(split));
}

LatticeVector sparsity_subgradient(const AndOrSplit& split) {
  const InteractionSpectrum spectrum = compute_spectrum(split);
  const unsigned n = split.n();
  LatticeVector and_signs(n);
  LatticeVector or_signs(n);
  for (std::size_t m = 1; m < and_signs.size(); ++m) {
    const auto s = static_cast<Mask>(m);
    and_signs[s] = sign(spectrum.i_and[s]);
    or_signs[s] = sign(spectrum.i_or[s]);
  }
  return loss_adjoint(std::move(and_signs), std::move(or_signs));
}

void validate(const OptimizerConfig& config) {
  if (config.max_iters < 1) {
    throw Error(ErrorKind::InvalidConfig, "max_iters must be at least 1");
  }
  if (config.step0 && !(*config.step0 > 0.0 && std::isfinite(*config.step0))) {
    throw Error(ErrorKind::InvalidConfig, "step0 must be positive");
  }
  if (!(config.tol >= 0.0) || !std::isfinite(config.tol)) {
    throw Error(ErrorKind::InvalidConfig, "tol must be nonnegative");
  }
  if (!std::isfinite(config.decay)) {
    throw Error(ErrorKind::InvalidConfig, "decay must be finite");
  }
}

double default_step0(const ValueTable& table) {
  return 0.05 * std::max(1.0, table.max_abs());
}

namespace {

// Tracks the best iterate, the best-loss history and the stopping rules
// shared by both methods.
class Progress {
 public:
  Progress(OptimizationResult& result, const OptimizerConfig& config,
           double reference_loss)
      : result_(result), config_(config), reference_(reference_loss),
        window_start_(std::numeric_limits<double>::infinity()),
        run_best_(std::numeric_limits<double>::infinity()) {}

  // Returns true when the iteration should stop.
  bool record(int t, const LatticeVector& gamma, double loss) {
    if (!std::isfinite(loss) || loss > kDivergenceFactor * reference_) {
      throw Error(ErrorKind::Diverged,
                  "sparsity loss reached " + std::to_string(loss) +
                      " from a starting value of " +
                      std::to_string(reference_) + "; reduce the step size");
    }
    if (loss < result_.loss) {
      result_.loss = loss;
      best_gamma_ = gamma;
    }
    result_.best_loss.push_back(result_.loss);
    result_.iterations = t + 1;
    if (result_.loss == 0.0) return result_.converged = true;

    // Stalling is judged on the iterates alone: an anchor that is still
    // ahead says nothing about whether the iterates are making progress.
    run_best_ = std::min(run_best_, loss);
    if ((t + 1) % kConvergenceWindow == 0) {
      if (window_start_ - run_best_ <= config_.tol * window_start_) {
        return result_.converged = true;
      }
      window_start_ = run_best_;
    }
    return false;
  }

  std::optional<LatticeVector>& best_gamma() { return best_gamma_; }

 private:
  OptimizationResult& result_;
  const OptimizerConfig& config_;
  double reference_;
  double window_start_;
  double run_best_;
  std::optional<LatticeVector> best_gamma_;
};

InteractionSpectrum spectrum_at(const ValueTable& table,
                                const LatticeVector& gamma) {
  return compute_spectrum(AndOrSplit(table, gamma, SplitMode::Learned));
}

void run_subgradient(const ValueTable& table, const OptimizerConfig& config,
                     double step0, Progress& progress) {
  std::mt19937_64 rng(config.seed);
  LatticeVector gamma(table.n());
  for (int t = 0; t < config.max_iters; ++t) {
    LatticeVector direction =
        sparsity_subgradient(AndOrSplit(table, gamma, SplitMode::Learned));
    double norm = l2_norm(direction);
    if (norm == 0.0) {
      // The chosen subgradient vanished on a kink; take a random unit step.
      for (double& x : direction.values()) {
        x = uniform_from_bits(rng(), -1.0, 1.0);
      }
      norm = l2_norm(direction);
    }
    const double step =
        step0 / std::pow(1.0 + static_cast<double>(t), config.decay);
    for (std::size_t m = 0; m < gamma.size(); ++m) {
      const auto s = static_cast<Mask>(m);
      gamma[s] -= step * direction[s] / norm;
    }
    if (progress.record(t, gamma, sparsity_loss(AndOrSplit(
                                      table, gamma, SplitMode::Learned)))) {
      return;
    }
  }
}

// Chambolle-Pock with diagonal preconditioning. Row and column absolute
// sums of the Mobius operator (and of its reflected twin) give the steps.
void run_primal_dual(const ValueTable& table, const OptimizerConfig& config,
                     double theta, Progress& progress) {
  const unsigned n = table.n();
  const Mask full = full_mask(n);
  const std::size_t size = lattice_size(n);

  std::vector<double> tau(size);
  std::vector<double> sigma(size, 0.0);
  for (std::size_t m = 0; m < size; ++m) {
    const auto s = static_cast<Mask>(m);
    const unsigned k = cardinality(s);
    const double supersets = std::ldexp(1.0, static_cast<int>(n - k));
    const double subsets = std::ldexp(1.0, static_cast<int>(k));
    const double column = (supersets - (s == 0 ? 1.0 : 0.0)) +
                          (subsets - (s == full ? 1.0 : 0.0));
    tau[m] = column > 0.0 ? theta / column : 0.0;
    if (s != 0) sigma[m] = 1.0 / (theta * subsets);
  }

  LatticeVector gamma(n);
  LatticeVector y_and(n);
  LatticeVector y_or(n);
  InteractionSpectrum current = spectrum_at(table, gamma);
  LatticeVector bar_and = current.i_and;
  LatticeVector bar_or = current.i_or;

  for (int t = 0; t < config.max_iters; ++t) {
    for (std::size_t m = 1; m < size; ++m) {
      const auto s = static_cast<Mask>(m);
      y_and[s] = std::clamp(y_and[s] + sigma[m] * bar_and[s], -1.0, 1.0);
      y_or[s] = std::clamp(y_or[s] + sigma[m] * bar_or[s], -1.0, 1.0);
    }
    const LatticeVector direction = loss_adjoint(y_and, y_or);
    for (std::size_t m = 0; m < size; ++m) {
      const auto s = static_cast<Mask>(m);
      gamma[s] -= tau[m] * direction[s];
    }

    InteractionSpectrum next = spectrum_at(table, gamma);
    // The spectrum is affine in gamma, so extrapolating it is the same as
    // evaluating it at 2 gamma_new - gamma_old.
    for (std::size_t m = 0; m < size; ++m) {
      const auto s = static_cast<Mask>(m);
      bar_and[s] = 2.0 * next.i_and[s] - current.i_and[s];
      bar_or[s] = 2.0 * next.i_or[s] - current.i_or[s];
    }
    current = std::move(next);
    if (progress.record(t, gamma, spectrum_loss(current))) return;
  }
}

}  // namespace

OptimizationResult optimize_gamma(const ValueTable& table,
                                  const OptimizerConfig& config) {
  validate(config);

  // Balanced (gamma = 0) first so that it wins ties.
  constexpr std::array kAnchors{SplitMode::Balanced, SplitMode::AndOnly,
                                SplitMode::OrOnly};
  std::optional<AndOrSplit> best_anchor;
  double best_anchor_loss = 0.0;
  double zero_loss = 0.0;
  for (const SplitMode mode : kAnchors) {
    AndOrSplit anchor = split_fixed(table, mode);
    const double loss = sparsity_loss(anchor);
    if (mode == SplitMode::Balanced) zero_loss = loss;
    if (!best_anchor || loss < best_anchor_loss) {
      best_anchor_loss = loss;
      best_anchor = std::move(anchor);
    }
  }

  OptimizationResult result{
      AndOrSplit(table, best_anchor->gamma(), SplitMode::Learned),
      best_anchor_loss, zero_loss, 0, false, {best_anchor_loss}};
  if (best_anchor_loss == 0.0) {
    result.converged = true;
    return result;
  }

  const double step0 = config.step0.value_or(default_step0(table));
  Progress progress(result, config, zero_loss);
  switch (config.method) {
    case OptimizerMethod::PrimalDual:
      run_primal_dual(table, config, step0, progress);
      break;
    case OptimizerMethod::Subgradient:
      run_subgradient(table, config, step0, progress);
      break;
  }
  if (auto& best = progress.best_gamma()) {
    result.split = AndOrSplit(table, std::move(*best), SplitMode::Learned);
  }
  return result;
}

}  // namespace harsanyi
