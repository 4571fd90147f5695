#pragma once

#include "sphsamp/fourier.hpp"
#include "sphsamp/sphere_core.hpp"

namespace sphsamp {

/// Band-limited synthesis Psi: C^{L^2} -> C^N at the stored nodes of a grid,
/// and its exact adjoint, by separation of variables (Legendre sums per ring
/// followed by a length-n_phi DFT). O(L^3) per application.
///
/// Holds per-ring Legendre tables; one instance per thread.
class Synthesis {
 public:
  explicit Synthesis(const GridDescriptor& grid);

  const GridDescriptor& grid() const noexcept { return grid_; }

  /// x = Psi a, a ordered by flat_index.
  VectorXc apply(const VectorXc& coeffs);

  /// a = Psi^H x.
  VectorXc adjoint(const VectorXc& samples);

  /// lambda_lm(theta_t), l < L, 0 <= m <= l at tri_index(l, m).
  const Eigen::MatrixXd& legendre() const noexcept { return legendre_; }

 private:
  GridDescriptor grid_;
  Eigen::MatrixXd legendre_;  // n_theta x L(L+1)/2
  Dft dft_;
  std::vector<Complex> ring_in_, ring_out_;
};

}  // namespace sphsamp
