#pragma once

#include "sphsamp/sphere_core.hpp"

#include <vector>

namespace sphsamp {

/// Associated Legendre function P_l^m(x), Condon-Shortley phase included,
/// for 0 <= m <= l. Throws std::domain_error for |x| > 1 or invalid (l, m).
double legendre(int l, int m, double x);

/// Orthonormal spherical harmonic Y_lm(theta, phi); negative m via
/// Y_{l,-m} = (-1)^m conj(Y_lm).
Complex ylm(int l, int m, double theta, double phi);

/// Index of (l, m >= 0) in a triangular table.
inline int tri_index(int l, int m) noexcept { return l * (l + 1) / 2 + m; }

/// lambda_lm(theta) = sqrt((2l+1)/4pi (l-m)!/(l+m)!) P_l^m(cos theta) for
/// l < L and 0 <= m <= l, stored at tri_index(l, m). Computed by the
/// normalized three-term recurrence upward in l.
VectorXr normalized_legendre(int L, double theta);

/// Wigner small-d values at beta = pi/2, d^l_{mn}(pi/2) for l < L.
class DeltaTable {
 public:
  DeltaTable() = default;
  explicit DeltaTable(std::vector<Eigen::MatrixXd> slices) : slices_(std::move(slices)) {}

  int L() const noexcept { return static_cast<int>(slices_.size()); }

  double operator()(int l, int m, int n) const { return slices_[l](m + l, n + l); }

  /// (2l+1) x (2l+1) slice indexed by (m + l, n + l).
  const Eigen::MatrixXd& slice(int l) const { return slices_[l]; }

 private:
  std::vector<Eigen::MatrixXd> slices_;
};

/// Builds all d^l_{mn}(pi/2), l < L, by coupling with spin 1/2 one half-step
/// at a time: d^{j+1/2} is formed from d^j via Clebsch-Gordan coefficients of
/// j (x) 1/2, which only combines bounded entries with positive weights.
DeltaTable build_delta_table(BandLimit L);

/// d^l_{mn}(beta) = i^{n-m} sum_{m'} Delta_{m'm} Delta_{m'n} e^{i m' beta}.
double wigner_d(const DeltaTable& delta, int l, int m, int n, double beta);

}  // namespace sphsamp
