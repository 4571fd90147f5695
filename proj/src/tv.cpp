#include "sphsamp/tv.hpp"

#include "sphsamp/dh_transform.hpp"
#include "sphsamp/mw_transform.hpp"

#include <cmath>

namespace sphsamp {

VectorXr quadrature_weights(const GridDescriptor& grid) {
  return grid.kind == GridKind::DH ? dh_weights(BandLimit(grid.L)).q : mw_weights(BandLimit(grid.L)).q;
}

GradientField<Complex> gradient(const SphereSignal& signal) {
  return forward_differences(signal.grid(), signal.values());
}

SphereSignal gradient_adjoint(const GradientField<Complex>& field) {
  return SphereSignal(field.grid, forward_differences_adjoint(field));
}

TvOperator::TvOperator(const GridDescriptor& grid, const VectorXr& quadrature)
    : grid_(grid), theta_scale_(grid.n_theta), phi_scale_(grid.n_theta) {
  if (quadrature.size() != grid.n_theta)
    throw ContractError("TV: expected " + std::to_string(grid.n_theta) + " quadrature weights, got " +
                        std::to_string(quadrature.size()));
  const double dtheta = grid.theta_spacing();
  const double dphi = grid.phi_spacing();
  for (int t = 0; t < grid.n_theta; ++t) {
    theta_scale_(t) = quadrature(t) / dtheta;
    phi_scale_(t) = grid.is_pole_row(t) ? 0.0 : quadrature(t) / (std::sin(grid.theta(t)) * dphi);
  }
}

GradientField<double> TvOperator::apply(const VectorXr& x) const {
  GradientField<double> g = forward_differences(grid_, x);
  g.d_theta.array().colwise() *= theta_scale_.array();
  g.d_phi.array().colwise() *= phi_scale_.array();
  return g;
}

VectorXr TvOperator::adjoint(const GradientField<double>& field) const {
  GradientField<double> scaled = field;
  scaled.d_theta.array().colwise() *= theta_scale_.array();
  scaled.d_phi.array().colwise() *= phi_scale_.array();
  return forward_differences_adjoint(scaled);
}

double TvOperator::magnitude_sum(const GradientField<double>& field) {
  return (field.d_theta.array().square() + field.d_phi.array().square()).sqrt().sum();
}

double TvOperator::norm(const VectorXr& x) const {
  if (!x.allFinite()) throw DataError("TV norm: signal contains non-finite samples");
  return magnitude_sum(apply(x));
}

double tv_norm(const SphereSignal& signal, const VectorXr& quadrature) {
  const TvOperator op(signal.grid(), quadrature);
  if (!signal.values().allFinite()) throw DataError("TV norm: signal contains non-finite samples");
  const VectorXr re = signal.values().real();
  const VectorXr im = signal.values().imag();
  return op.norm(re) + (im.cwiseAbs().maxCoeff() > 0.0 ? op.norm(im) : 0.0);
}

double tv_norm(const SphereSignal& signal) { return tv_norm(signal, quadrature_weights(signal.grid())); }

}  // namespace sphsamp
