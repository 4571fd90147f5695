#include "sphsamp/dh_transform.hpp"

#include "sphsamp/special_functions.hpp"

#include <cmath>
#include <numbers>

namespace sphsamp {

using std::numbers::pi;

namespace {

void require_dh(const GridDescriptor& expected, const GridDescriptor& got) {
  if (got.kind != GridKind::DH) throw ContractError("expected a DH grid, got " + std::string(to_string(got.kind)));
  if (got.L != expected.L)
    throw ContractError("DH band-limit mismatch: plan L=" + std::to_string(expected.L) +
                        ", signal L=" + std::to_string(got.L));
}

}  // namespace

DhWeights dh_weights(BandLimit L) {
  const GridDescriptor grid = make_grid(GridKind::DH, L);
  DhWeights w{L, VectorXr(grid.n_theta)};
  for (int t = 0; t < grid.n_theta; ++t) {
    const double theta = grid.theta(t);
    double sum = 0.0;
    for (int k = 0; k < L; ++k) sum += std::sin((2.0 * k + 1.0) * theta) / (2.0 * k + 1.0);
    w.q(t) = 2.0 * pi / (double(L) * L) * std::sin(theta) * sum;
  }
  return w;
}

DhTransform::DhTransform(BandLimit L) : weights_(dh_weights(L)), synthesis_(make_grid(GridKind::DH, L)) {}

HarmonicCoeffs DhTransform::forward(const SphereSignal& signal) {
  const GridDescriptor& g = grid();
  require_dh(g, signal.grid());
  const int L = g.L;
  const int n = g.n_phi;
  const Eigen::MatrixXd& lambda = synthesis_.legendre();
  HarmonicCoeffs out{BandLimit(L)};
  std::vector<Complex> ring(n), spectrum(n);
  for (int t = 0; t < g.n_theta; ++t) {
    const double q = weights_.q(t);
    if (q == 0.0) continue;
    for (int p = 0; p < n; ++p) ring[p] = signal(t, p);
    dft_.forward(ring, spectrum);
    for (int m = -(L - 1); m <= L - 1; ++m) {
      const int am = std::abs(m);
      const Complex g_m = q * (m < 0 ? parity(am) : 1.0) * spectrum[freq_slot(m, n)];
      for (int l = am; l < L; ++l) out(l, m) += g_m * lambda(t, tri_index(l, am));
    }
  }
  return out;
}

SphereSignal DhTransform::inverse(const HarmonicCoeffs& coeffs) {
  if (coeffs.L() != grid().L) throw ContractError("DH inverse: coefficient band-limit mismatch");
  return SphereSignal(grid(), synthesis_.apply(coeffs.values()));
}

Complex DhTransform::integrate(const SphereSignal& signal) const {
  require_dh(grid(), signal.grid());
  Complex sum = 0.0;
  for (int t = 0; t < grid().n_theta; ++t) {
    Complex ring = 0.0;
    for (int p = 0; p < grid().n_phi; ++p) ring += signal(t, p);
    sum += weights_.q(t) * ring;
  }
  return sum;
}

HarmonicCoeffs dh_forward(const SphereSignal& signal) {
  DhTransform plan{BandLimit(signal.grid().L)};
  return plan.forward(signal);
}

SphereSignal dh_inverse(const HarmonicCoeffs& coeffs, BandLimit L) {
  if (coeffs.L() != L) throw ContractError("dh_inverse: coefficient band-limit mismatch");
  DhTransform plan{L};
  return plan.inverse(coeffs);
}

Complex dh_integrate(const SphereSignal& signal) {
  if (signal.grid().kind != GridKind::DH) throw ContractError("dh_integrate: expected a DH grid");
  return DhTransform{BandLimit(signal.grid().L)}.integrate(signal);
}

}  // namespace sphsamp
