#include "sphsamp/inpainting.hpp"

#include "sphsamp/dh_transform.hpp"
#include "sphsamp/mw_transform.hpp"
#include "sphsamp/random.hpp"
#include "sphsamp/signals.hpp"
#include "sphsamp/synthesis.hpp"
#include "sphsamp/tv.hpp"

#include <Eigen/Cholesky>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <type_traits>

namespace sphsamp {

MeasurementOp::MeasurementOp(int n_samples, std::vector<int> mask) : n_(n_samples), mask_(std::move(mask)) {
  if (static_cast<int>(mask_.size()) > n_)
    throw std::domain_error("mask has more entries (" + std::to_string(mask_.size()) + ") than samples (" +
                            std::to_string(n_) + ")");
  for (std::size_t i = 0; i < mask_.size(); ++i) {
    if (mask_[i] < 0 || mask_[i] >= n_) throw ContractError("mask index out of range");
    if (i > 0 && mask_[i] <= mask_[i - 1]) throw ContractError("mask must be sorted and distinct");
  }
}

VectorXr MeasurementOp::apply(const VectorXr& x) const {
  if (x.size() != n_) throw ContractError("measurement: signal length mismatch");
  VectorXr y(M());
  for (int i = 0; i < M(); ++i) y(i) = x(mask_[i]);
  return y;
}

VectorXr MeasurementOp::adjoint(const VectorXr& y) const {
  if (y.size() != M()) throw ContractError("measurement adjoint: length mismatch");
  VectorXr x = VectorXr::Zero(n_);
  for (int i = 0; i < M(); ++i) x(mask_[i]) = y(i);
  return x;
}

std::string_view to_string(Domain domain) { return domain == Domain::Spatial ? "spatial" : "harmonic"; }

Domain parse_domain(std::string_view text) {
  if (text == "spatial") return Domain::Spatial;
  if (text == "harmonic") return Domain::Harmonic;
  throw std::invalid_argument("unknown domain '" + std::string(text) + "' (expected spatial or harmonic)");
}

int measurement_count(double ratio, int L) { return static_cast<int>(std::lround(ratio * L * L)); }

GeneratedProblem make_problem(const SphereSignal& x_true, double ratio, double sigma_rel, Domain domain,
                              std::uint64_t seed) {
  const GridDescriptor& grid = x_true.grid();
  if (!(ratio > 0.0)) throw std::domain_error("measurement ratio must be positive");
  if (sigma_rel < 0.0) throw std::domain_error("noise level must be non-negative");
  const int M = measurement_count(ratio, grid.L);
  if (M > grid.n_samples)
    throw std::domain_error("ratio " + std::to_string(ratio) + " asks for " + std::to_string(M) +
                            " measurements but the grid has " + std::to_string(grid.n_samples) + " samples");
  Rng rng(seed);
  MeasurementOp op(grid.n_samples, rng.sample_without_replacement(grid.n_samples, M));
  const VectorXr x = x_true.values().real();
  const double sigma = sigma_rel * x.cwiseAbs().maxCoeff();
  VectorXr noise(M);
  for (auto& n : noise) n = sigma * rng.normal();
  VectorXr y = op.apply(x) + noise;
  const double epsilon = sigma * std::sqrt(M + 2.0 * std::sqrt(2.0 * M));
  return {InpaintProblem{std::move(y), std::move(op), sigma, epsilon, domain, grid},
          GroundTruth{x_true, std::move(noise), seed}};
}

HarmonicCoeffs real_to_coeffs(BandLimit L, const VectorXr& z) {
  if (z.size() != L * L) throw ContractError("real parameterization: length mismatch");
  HarmonicCoeffs f{L};
  const double h = std::numbers::sqrt2 / 2.0;
  for (int l = 0; l < L; ++l) {
    f(l, 0) = z(flat_index(l, 0));
    for (int m = 1; m <= l; ++m) {
      const double a = z(flat_index(l, m)), b = z(flat_index(l, -m));
      f(l, m) = Complex(a, b) * h;
      f(l, -m) = ((m & 1) ? -h : h) * Complex(a, -b);
    }
  }
  return f;
}

VectorXr coeffs_to_real(const HarmonicCoeffs& coeffs) {
  const int L = coeffs.L();
  VectorXr z(L * L);
  const double h = std::numbers::sqrt2 / 2.0;
  for (int l = 0; l < L; ++l) {
    z(flat_index(l, 0)) = coeffs(l, 0).real();
    for (int m = 1; m <= l; ++m) {
      const double s = (m & 1) ? -1.0 : 1.0;
      const Complex cp = coeffs(l, m), cm = coeffs(l, -m);
      z(flat_index(l, m)) = h * (cp.real() + s * cm.real());
      z(flat_index(l, -m)) = h * (cp.imag() - s * cm.imag());
    }
  }
  return z;
}

double snr(const SphereSignal& x_true, const SphereSignal& x_rec) {
  if (!(x_true.grid() == x_rec.grid())) throw ContractError("snr: grid mismatch");
  const double signal = x_true.values().norm();
  if (signal == 0.0) throw std::domain_error("snr: reference signal is zero");
  const double error = (x_true.values() - x_rec.values()).norm();
  if (error == 0.0) return std::numeric_limits<double>::infinity();
  return 20.0 * std::log10(signal / error);
}

namespace {

// Real linear map S from solver variables to real samples.
class SpatialBasis {
 public:
  explicit SpatialBasis(const GridDescriptor& grid) : n_(grid.n_samples) {}
  int size() const { return n_; }
  VectorXr apply(const VectorXr& z) { return z; }
  VectorXr adjoint(const VectorXr& x) { return x; }

 private:
  int n_;
};

// Band-limited synthesis in whitened coordinates w = R^T z, where
// S^T S = R R^T, so the basis has orthonormal columns and the solver sees a
// well-conditioned operator whatever the sample density near the poles.
class HarmonicBasis {
 public:
  explicit HarmonicBasis(const GridDescriptor& grid) : L_(grid.L), synthesis_(grid) {
    const int n = L_ * L_;
    Eigen::MatrixXd gram(n, n);
    VectorXr e = VectorXr::Zero(n);
    for (int j = 0; j < n; ++j) {
      e(j) = 1.0;
      gram.col(j) = raw_adjoint(raw_apply(e));
      e(j) = 0.0;
    }
    factor_.compute(0.5 * (gram + gram.transpose()));
    if (factor_.info() != Eigen::Success) throw std::runtime_error("harmonic basis: Gram matrix is not positive definite");
  }
  int size() const { return L_ * L_; }
  VectorXr apply(const VectorXr& w) { return raw_apply(to_coefficients(w)); }
  VectorXr adjoint(const VectorXr& x) { return factor_.matrixL().solve(raw_adjoint(x)); }
  /// z = R^{-T} w in the real parameterization.
  VectorXr to_coefficients(const VectorXr& w) const { return factor_.matrixU().solve(w); }
  VectorXr from_coefficients(const VectorXr& z) const { return factor_.matrixU() * z; }

 private:
  VectorXr raw_apply(const VectorXr& z) {
    return synthesis_.apply(real_to_coeffs(BandLimit(L_), z).values()).real();
  }
  VectorXr raw_adjoint(const VectorXr& x) {
    return coeffs_to_real(HarmonicCoeffs(BandLimit(L_), synthesis_.adjoint(x.cast<Complex>())));
  }

  int L_;
  Synthesis synthesis_;
  Eigen::LLT<Eigen::MatrixXd> factor_;
};

template <typename Op>
double power_norm(Op&& normal_op, int n, const SolverOptions& options) {
  Rng rng(0x5eed);
  VectorXr v(n);
  for (auto& x : v) x = rng.normal();
  v.normalize();
  double estimate = 0.0;
  for (int k = 0; k < options.power_iter; ++k) {
    VectorXr w = normal_op(v);
    const double next = std::sqrt(w.norm());
    if (next == 0.0) return 0.0;
    v = w / w.norm();
    const bool done = std::abs(next - estimate) <= options.power_tol * next;
    estimate = next;
    if (done) break;
  }
  return estimate;
}

void project_ball(VectorXr& v, const VectorXr& centre, double radius) {
  const VectorXr d = v - centre;
  const double n = d.norm();
  if (n > radius) v = centre + (radius / n) * d;
}

void project_magnitudes(GradientField<double>& p, double bound) {
  const auto mag = (p.d_theta.array().square() + p.d_phi.array().square()).sqrt();
  const auto shrink = (mag / bound).max(1.0);
  p.d_theta.array() /= shrink;
  p.d_phi.array() /= shrink;
}

// Chambolle-Pock on min a ||K1 z||_{2,1} s.t. ||y - b K2 z|| <= eps with
// K1 = (TV o S) / a and K2 = (Phi o S) / b both of unit norm.
template <typename Basis>
SolveResult primal_dual(const InpaintProblem& problem, Basis& S, VectorXr z, const SolverOptions& options,
                        bool project_final) {
  const GridDescriptor& grid = problem.grid;
  const MeasurementOp& phi = problem.op;
  const TvOperator tv(grid);
  const int n = S.size();
  const double eps = problem.epsilon;
  const double y_norm = problem.y.norm();
  const double feasible = eps * (1.0 + options.feasibility_tol) + options.residual_floor * y_norm;

  const double a = power_norm([&](const VectorXr& v) { return S.adjoint(tv.adjoint(tv.apply(S.apply(v)))); }, n,
                              options);
  const double b = (1.0 / options.constraint_weight) *
      power_norm([&](const VectorXr& v) { return S.adjoint(phi.adjoint(phi.apply(S.apply(v)))); }, n, options);
  if (!(b > 0.0)) throw std::domain_error("measurement operator is empty");
  const double ta = a > 0.0 ? a : 1.0;
  const double stacked = power_norm(
      [&](const VectorXr& v) {
        const VectorXr x = S.apply(v);
        return S.adjoint((tv.adjoint(tv.apply(x)) / (ta * ta)) + phi.adjoint(phi.apply(x)) / (b * b));
      },
      n, options);
  const double step = 0.99 / std::max(stacked, 1e-12);
  const double tau = step * options.step_ratio;
  const double sig = step / options.step_ratio;

  const VectorXr y_scaled = problem.y / b;
  const double eps_scaled = eps / b;

  GradientField<double> p{grid, GridArray<double>::Zero(grid.n_theta, grid.n_phi),
                          GridArray<double>::Zero(grid.n_theta, grid.n_phi)};
  VectorXr r = VectorXr::Zero(phi.M());
  VectorXr x = S.apply(z);
  VectorXr x_bar = x;

  // Raw iterates are not monotone in the objective; the returned solution is
  // the best feasible candidate seen so far. Spatial candidates are iterates
  // projected onto the data ball, harmonic ones are iterates whose residual
  // is within tolerance.
  auto project_data = [&](VectorXr v) {
    VectorXr measured = phi.apply(v);
    const VectorXr before = measured;
    project_ball(measured, problem.y, eps);
    return VectorXr(v + phi.adjoint(measured - before));
  };
  std::vector<double> raw, incumbent;
  raw.reserve(options.max_iter + 1);
  incumbent.reserve(options.max_iter + 1);
  bool have_best = false;
  double best_objective = std::numeric_limits<double>::infinity();
  VectorXr best_x, best_z;
  double objective = 0.0, residual = 0.0;

  auto observe = [&]() {
    objective = tv.norm(x);
    residual = (problem.y - phi.apply(x)).norm();
    raw.push_back(objective);
    if (project_final) {
      VectorXr candidate = project_data(x);
      const double value = tv.norm(candidate);
      if (value < best_objective) {
        best_objective = value;
        best_z = candidate;
        best_x = std::move(candidate);
        have_best = true;
      }
    } else if (residual <= feasible && objective < best_objective) {
      best_objective = objective;
      best_x = x;
      best_z = z;
      have_best = true;
    }
    incumbent.push_back(have_best ? best_objective : objective);
  };

  auto make_result = [&](int iterations) {
    const VectorXr& xs = have_best ? best_x : x;
    const VectorXr& zs = have_best ? best_z : z;
    SolveResult out{SphereSignal(grid, xs.cast<Complex>()), std::nullopt, iterations, tv.norm(xs),
                    (problem.y - phi.apply(xs)).norm(), {}, {}};
    if constexpr (std::is_same_v<Basis, HarmonicBasis>)
      out.x_hat_star = real_to_coeffs(BandLimit(grid.L), S.to_coefficients(zs));
    if (options.record_history) {
      out.objective_history = incumbent;
      out.iterate_objective_history = raw;
    }
    return out;
  };

  observe();
  for (int k = 1; k <= options.max_iter; ++k) {
    GradientField<double> g = tv.apply(x_bar);
    p.d_theta += (sig / ta) * g.d_theta;
    p.d_phi += (sig / ta) * g.d_phi;
    project_magnitudes(p, ta);

    VectorXr s = r + (sig / b) * phi.apply(x_bar);
    VectorXr centre = s / sig;
    project_ball(centre, y_scaled, eps_scaled);
    r = s - sig * centre;

    const VectorXr back = tv.adjoint(p) / ta + phi.adjoint(r) / b;
    z -= tau * S.adjoint(back);
    const VectorXr x_new = S.apply(z);
    x_bar = 2.0 * x_new - x;
    x = x_new;
    observe();

    if (k >= options.window) {
      const double previous = raw[raw.size() - 1 - options.window];
      const double change = std::abs(objective - previous);
      const bool stable = change <= options.objective_tol * std::max(objective, 1e-300) || objective == previous;
      // Either the iterate itself is feasible, or the feasible incumbent has
      // stopped improving and agrees with the iterate's objective (the iterate
      // may approach an epsilon = 0 ball only asymptotically).
      const bool settled = incumbent.back() == incumbent[incumbent.size() - 1 - options.window] &&
                           std::abs(incumbent.back() - objective) <= options.feasibility_tol * objective;
      if (stable && have_best && (residual <= feasible || settled)) return make_result(k);
    }
  }
  throw SolverError("solver did not converge in " + std::to_string(options.max_iter) +
                        " iterations (residual " + std::to_string(residual) + ", bound " + std::to_string(eps) + ")",
                    make_result(options.max_iter));
}

// CGLS on min ||y - Phi S z|| from z, stopped once the residual reaches
// `target` or the normal-equation residual stalls.
template <typename Basis>
VectorXr least_squares_start(const InpaintProblem& problem, Basis& S, VectorXr z, double target, int max_iter) {
  const MeasurementOp& phi = problem.op;
  VectorXr r = problem.y - phi.apply(S.apply(z));
  VectorXr s = S.adjoint(phi.adjoint(r));
  VectorXr d = s;
  double gamma = s.squaredNorm();
  const double gamma0 = gamma;
  for (int k = 0; k < max_iter && r.norm() > target && gamma > 1e-24 * gamma0; ++k) {
    const VectorXr q = phi.apply(S.apply(d));
    const double alpha = gamma / q.squaredNorm();
    z += alpha * d;
    r -= alpha * q;
    s = S.adjoint(phi.adjoint(r));
    const double next = s.squaredNorm();
    d = s + (next / gamma) * d;
    gamma = next;
  }
  return z;
}

HarmonicCoeffs analyze(const SphereSignal& signal) {
  if (signal.grid().kind == GridKind::DH) return dh_forward(signal);
  return mw_forward(signal);
}

}  // namespace

SolveResult solve_spatial(const InpaintProblem& problem, const SolverOptions& options) {
  if (problem.domain != Domain::Spatial) throw ContractError("solve_spatial: problem is not spatial");
  SpatialBasis basis(problem.grid);
  return primal_dual(problem, basis, problem.op.adjoint(problem.y), options, true);
}

SolveResult solve_harmonic(const InpaintProblem& problem, const SolverOptions& options) {
  if (problem.domain != Domain::Harmonic) throw ContractError("solve_harmonic: problem is not harmonic");
  HarmonicBasis basis(problem.grid);
  const SphereSignal zero_filled(problem.grid, problem.op.adjoint(problem.y).cast<Complex>());
  // Start from a (near) feasible least-squares fit so the objective descends.
  VectorXr z = basis.from_coefficients(coeffs_to_real(analyze(zero_filled)));
  z = least_squares_start(problem, basis, std::move(z), 0.5 * problem.epsilon, 500);
  return primal_dual(problem, basis, std::move(z), options, false);
}

SolveResult solve(const InpaintProblem& problem, const SolverOptions& options) {
  return problem.domain == Domain::Spatial ? solve_spatial(problem, options) : solve_harmonic(problem, options);
}

void ExperimentConfig::validate() const {
  if (L < 2) throw std::invalid_argument("L must be at least 2");
  if (kinds.empty()) throw std::invalid_argument("no grid kinds given");
  if (domains.empty()) throw std::invalid_argument("no domains given");
  if (ratios.empty()) throw std::invalid_argument("no ratios given");
  for (double r : ratios)
    if (!(r > 0.0)) throw std::invalid_argument("ratios must be positive");
  if (trials < 1) throw std::invalid_argument("trials must be at least 1");
  if (!(sigma_rel >= 0.0)) throw std::invalid_argument("sigma_rel must be non-negative");
  if (signal && signal->L() != L) throw std::invalid_argument("test signal band-limit differs from L");
  if (solver.max_iter < 1) throw std::invalid_argument("max_iter must be at least 1");
}

std::uint64_t trial_seed(std::uint64_t base, GridKind kind, int ratio_index, int trial) {
  return derive_seed(base, kind == GridKind::DH ? 0 : 1, static_cast<std::uint64_t>(ratio_index),
                     static_cast<std::uint64_t>(trial));
}

std::vector<ExperimentCell> run_experiment(const ExperimentConfig& config) {
  config.validate();
  std::vector<ExperimentCell> cells;
  for (GridKind kind : config.kinds) {
    const GridDescriptor grid = make_grid(kind, BandLimit(config.L));
    SphereSignal x_true = config.signal ? synthesize(*config.signal, grid)
                                        : make_cap_signal(grid, default_caps(), default_smoothing(config.L)).signal;
    x_true.values() = x_true.values().real().cast<Complex>();
    for (Domain domain : config.domains) {
      for (std::size_t ri = 0; ri < config.ratios.size(); ++ri) {
        const double requested = config.ratios[ri];
        const int M = std::min(measurement_count(requested, config.L), grid.n_samples);
        // The ratio actually handed to make_problem; clamping keeps M <= N.
        const double ratio =
            M < measurement_count(requested, config.L) ? double(M) / (config.L * config.L) : requested;
        ExperimentCell cell{kind, domain, requested, M, 0.0, 0.0, 0, {}, {}, {}};
        for (int trial = 0; trial < config.trials; ++trial) {
          const std::uint64_t seed = trial_seed(config.seed, kind, static_cast<int>(ri), trial);
          cell.seeds.push_back(seed);
          try {
            const GeneratedProblem gen = make_problem(x_true, ratio, config.sigma_rel, domain, seed);
            const SolveResult res = solve(gen.problem, config.solver);
            cell.snr_db.push_back(snr(x_true, res.x_star));
          } catch (const std::exception& e) {
            cell.failures.push_back("trial " + std::to_string(trial) + ": " + e.what());
          }
        }
        cell.trials = static_cast<int>(cell.snr_db.size());
        if (cell.trials > 0) {
          double sum = 0.0;
          for (double v : cell.snr_db) sum += v;
          cell.mean_snr_db = sum / cell.trials;
          double sq = 0.0;
          for (double v : cell.snr_db) sq += (v - cell.mean_snr_db) * (v - cell.mean_snr_db);
          cell.std_snr_db = cell.trials > 1 ? std::sqrt(sq / (cell.trials - 1)) : 0.0;
        } else {
          cell.mean_snr_db = std::numeric_limits<double>::quiet_NaN();
          cell.std_snr_db = std::numeric_limits<double>::quiet_NaN();
        }
        cells.push_back(std::move(cell));
      }
    }
  }
  return cells;
}

}  // namespace sphsamp
