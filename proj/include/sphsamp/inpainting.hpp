#pragma once

#include "sphsamp/sphere_core.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace sphsamp {

/// Phi: keeps the samples listed in `mask` (sorted, distinct, < N).
class MeasurementOp {
 public:
  MeasurementOp(int n_samples, std::vector<int> mask);

  int N() const noexcept { return n_; }
  int M() const noexcept { return static_cast<int>(mask_.size()); }
  const std::vector<int>& mask() const noexcept { return mask_; }

  VectorXr apply(const VectorXr& x) const;
  /// Zero fill.
  VectorXr adjoint(const VectorXr& y) const;

 private:
  int n_;
  std::vector<int> mask_;
};

enum class Domain { Spatial, Harmonic };

std::string_view to_string(Domain domain);
Domain parse_domain(std::string_view text);

struct InpaintProblem {
  VectorXr y;
  MeasurementOp op;
  double sigma;
  double epsilon;
  Domain domain;
  GridDescriptor grid;
};

struct GroundTruth {
  SphereSignal x_true;
  VectorXr noise;
  std::uint64_t seed;
};

struct GeneratedProblem {
  InpaintProblem problem;
  GroundTruth truth;
};

/// Random mask of M = round(ratio L^2) samples and Gaussian noise with
/// sigma = sigma_rel * max|x_true|; epsilon^2 = sigma^2 (M + 2 sqrt(2M)).
/// Only the real part of x_true is measured. Throws std::domain_error if
/// ratio <= 0 or M > N.
GeneratedProblem make_problem(const SphereSignal& x_true, double ratio, double sigma_rel, Domain domain,
                              std::uint64_t seed);

/// Measurement count for a ratio, before the M <= N check.
int measurement_count(double ratio, int L);

struct SolverOptions {
  int max_iter = 5000;
  double objective_tol = 1e-6;  // relative change over `window` iterations
  int window = 10;
  double feasibility_tol = 1e-3;
  double residual_floor = 1e-7;  // relative to ||y||; lets epsilon = 0 terminate
  double step_ratio = 1.0;  // tau / sigma balance; tau * sigma stays fixed
  double constraint_weight = 1.0;  // relative scale of the data-fidelity block
  int power_iter = 50;
  double power_tol = 1e-6;
  bool record_history = true;
};

struct SolveResult {
  SphereSignal x_star;
  std::optional<HarmonicCoeffs> x_hat_star;
  int iterations = 0;
  double final_objective = 0.0;
  double final_residual = 0.0;
  /// Objective of the returned candidate after each iteration (index 0 is
  /// the starting point); non-increasing once a feasible candidate exists.
  std::vector<double> objective_history;
  /// Objective of the raw primal iterates, for diagnostics.
  std::vector<double> iterate_objective_history;
};

/// Thrown when the solver exhausts max_iter; carries the last iterate.
class SolverError : public std::runtime_error {
 public:
  SolverError(const std::string& what, SolveResult last) : std::runtime_error(what), last_(std::move(last)) {}
  const SolveResult& last_iterate() const noexcept { return last_; }

 private:
  SolveResult last_;
};

/// min TV(x) s.t. ||y - Phi x|| <= epsilon over real samples x.
SolveResult solve_spatial(const InpaintProblem& problem, const SolverOptions& options = {});

/// min TV(Psi a) s.t. ||y - Phi Psi a|| <= epsilon over coefficients of real signals.
SolveResult solve_harmonic(const InpaintProblem& problem, const SolverOptions& options = {});

/// Dispatches on problem.domain.
SolveResult solve(const InpaintProblem& problem, const SolverOptions& options = {});

/// Real parameterization of coefficients with f_{l,-m} = (-1)^m conj(f_lm),
/// stored in the flat_index layout: z_l0 = f_l0, and for m > 0
/// f_lm = (z_{l,m} + i z_{l,-m}) / sqrt 2. Isometric.
HarmonicCoeffs real_to_coeffs(BandLimit L, const VectorXr& z);
/// Adjoint of real_to_coeffs (its inverse on conjugate-symmetric input).
VectorXr coeffs_to_real(const HarmonicCoeffs& coeffs);

/// 20 log10(||x_true|| / ||x_true - x_rec||) in dB; +infinity if equal.
/// Throws std::domain_error for a zero x_true, ContractError on grid mismatch.
double snr(const SphereSignal& x_true, const SphereSignal& x_rec);

struct ExperimentConfig {
  int L = 32;
  std::vector<GridKind> kinds{GridKind::DH, GridKind::MW};
  std::vector<Domain> domains{Domain::Spatial, Domain::Harmonic};
  std::vector<double> ratios{0.25, 0.5, 1.0, 1.5, 2.0};
  int trials = 10;
  double sigma_rel = 0.01;
  std::uint64_t seed = 1;
  SolverOptions solver;
  /// Test signal; the default five-cap signal when empty. Its real part on
  /// each grid is used as ground truth.
  std::optional<HarmonicCoeffs> signal;

  /// Throws std::invalid_argument when inconsistent.
  void validate() const;
};

struct ExperimentCell {
  GridKind kind;
  Domain domain;
  double ratio;
  int measurements;  // after clamping to N
  double mean_snr_db;
  double std_snr_db;
  int trials;  // successful trials
  std::vector<double> snr_db;
  std::vector<std::uint64_t> seeds;
  std::vector<std::string> failures;
};

/// Seed of one trial; independent of the domain so both domains solve the
/// same problem instance.
std::uint64_t trial_seed(std::uint64_t base, GridKind kind, int ratio_index, int trial);

/// Runs every (kind, domain, ratio) cell over `trials` masks of the test
/// signal. Ratios above N/L^2 are clamped to M = N. Solver failures are
/// recorded per cell.
std::vector<ExperimentCell> run_experiment(const ExperimentConfig& config);

}  // namespace sphsamp
