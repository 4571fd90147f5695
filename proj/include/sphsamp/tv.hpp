#pragma once

#include "sphsamp/sphere_core.hpp"

#include <stdexcept>

namespace sphsamp {

/// Raised for non-finite or otherwise unusable sample data.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Forward differences of a signal over the full (theta, phi) array.
///   d_theta(t, p) = x(t+1, p) - x(t, p), zero on the last row
///   d_phi(t, p)   = x(t, p+1 mod n_phi) - x(t, p)
/// Pole rows hold the single stored value broadcast over p, so d_phi vanishes there.
template <typename Scalar>
struct GradientField {
  GridDescriptor grid;
  GridArray<Scalar> d_theta;
  GridArray<Scalar> d_phi;
};

/// Quadrature weights q(theta_t) of the grid's sampling theorem (length n_theta).
VectorXr quadrature_weights(const GridDescriptor& grid);

template <typename Derived>
GradientField<typename Derived::Scalar> forward_differences(const GridDescriptor& grid,
                                                            const Eigen::MatrixBase<Derived>& stored) {
  using Scalar = typename Derived::Scalar;
  const GridArray<Scalar> full = expand(grid, stored);
  GradientField<Scalar> g{grid, GridArray<Scalar>::Zero(grid.n_theta, grid.n_phi),
                          GridArray<Scalar>(grid.n_theta, grid.n_phi)};
  const int rows = grid.n_theta;
  const int cols = grid.n_phi;
  if (rows > 1) g.d_theta.topRows(rows - 1) = full.bottomRows(rows - 1) - full.topRows(rows - 1);
  for (int p = 0; p < cols; ++p) g.d_phi.col(p) = full.col((p + 1) % cols) - full.col(p);
  return g;
}

/// Exact adjoint of forward_differences (including the pole broadcast).
template <typename Scalar>
Vector<Scalar> forward_differences_adjoint(const GradientField<Scalar>& field) {
  const GridDescriptor& grid = field.grid;
  const int rows = grid.n_theta;
  const int cols = grid.n_phi;
  GridArray<Scalar> full = GridArray<Scalar>::Zero(rows, cols);
  if (rows > 1) {
    full.bottomRows(rows - 1) += field.d_theta.topRows(rows - 1);
    full.topRows(rows - 1) -= field.d_theta.topRows(rows - 1);
  }
  for (int p = 0; p < cols; ++p) {
    full.col((p + 1) % cols) += field.d_phi.col(p);
    full.col(p) -= field.d_phi.col(p);
  }
  return expand_adjoint(grid, full);
}

GradientField<Complex> gradient(const SphereSignal& signal);
SphereSignal gradient_adjoint(const GradientField<Complex>& field);

/// The weighted gradient inside the discrete TV norm:
///   u(t, p) = q_t / dtheta * d_theta(t, p)
///   v(t, p) = q_t / (sin(theta_t) dphi) * d_phi(t, p)     (0 on pole rows)
///   TV(x)   = sum_{t,p} sqrt(u^2 + v^2)
/// The sin(theta) in q cancels the 1/sin(theta) of the metric.
class TvOperator {
 public:
  TvOperator(const GridDescriptor& grid, const VectorXr& quadrature);
  explicit TvOperator(const GridDescriptor& grid) : TvOperator(grid, quadrature_weights(grid)) {}

  const GridDescriptor& grid() const noexcept { return grid_; }
  const VectorXr& theta_scale() const noexcept { return theta_scale_; }
  const VectorXr& phi_scale() const noexcept { return phi_scale_; }

  GradientField<double> apply(const VectorXr& x) const;
  VectorXr adjoint(const GradientField<double>& field) const;

  /// Isotropic TV of a real signal. Throws DataError on non-finite samples.
  double norm(const VectorXr& x) const;
  /// sum sqrt(u^2 + v^2) over an already weighted field.
  static double magnitude_sum(const GradientField<double>& field);

 private:
  GridDescriptor grid_;
  VectorXr theta_scale_;
  VectorXr phi_scale_;
};

/// Discrete TV norm with the grid's quadrature weights; complex signals
/// contribute TV(Re x) + TV(Im x).
double tv_norm(const SphereSignal& signal, const VectorXr& quadrature);
double tv_norm(const SphereSignal& signal);

}  // namespace sphsamp
