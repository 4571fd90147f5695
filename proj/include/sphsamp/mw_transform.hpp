#pragma once

#include "sphsamp/fourier.hpp"
#include "sphsamp/special_functions.hpp"
#include "sphsamp/sphere_core.hpp"

namespace sphsamp {

/// Weights of the McEwen-Wiaux sampling theorem.
///
///   w(m')     = int_0^pi sin(theta) exp(i m' theta) dtheta, |m'| <= 2(L-1)
///   v(theta_t) = 1/(2L-1) sum_{|m'|<L} w(-m') exp(i m' theta_t), t < 2L-1
///   q(theta_t) = 2pi/(2L-1) [v(theta_t) + (1 - delta_{t,L-1}) v(theta_{2L-2-t})], t < L
struct MwWeights {
  int L;
  VectorXc w;  // slot m' + 2(L-1)
  VectorXc v;  // extended theta nodes t = 0 .. 2L-2
  VectorXr q;  // length L

  Complex w_at(int m_prime) const { return w(m_prime + 2 * (L - 1)); }
};

/// Closed form of w(m'): 2 for m' = 0, +-i pi/2 for m' = +-1, 0 for other odd
/// m', 2/(1-m'^2) for even m'.
Complex mw_weight(int m_prime);

/// Throws std::runtime_error if any q(theta_t) carries an imaginary residue
/// above 1e-12.
MwWeights mw_weights(BandLimit L);

/// Intermediate arrays of the forward transform, indexed by signed
/// frequencies shifted by L-1 (column/row i holds frequency i - (L-1)).
struct TorusSpectrum {
  int L;
  Eigen::MatrixXcd G;      // L x (2L-1): G_m(theta_t), t < L
  Eigen::MatrixXcd G_ext;  // (2L-1) x (2L-1): periodic extension over theta in [0, 2pi)
  Eigen::MatrixXcd F;      // (2L-1) x (2L-1): F_{m m'}, row m, column m'
  Eigen::MatrixXcd Gmm;    // (2L-1) x (2L-1): G_{m m'}, row m, column m'
};

/// McEwen-Wiaux transform plan for one band-limit (spin 0).
///
/// forward() runs the chain: phi-DFT per ring -> periodic extension in theta
/// with the (-1)^m factor -> theta-DFT -> convolution with w -> Delta sums.
/// inverse() runs the chain in reverse. Both are O(L^3).
///
/// DFT conventions: G_m(theta_t) = 2pi/(2L-1) sum_p f(theta_t, phi_p) e^{-i m phi_p};
/// F_{mm'} = 1/(2pi(2L-1)) sum_{t<2L-1} G_ext_m(theta_t) e^{-i m' theta_t}.
class MwTransform {
 public:
  explicit MwTransform(BandLimit L);

  const GridDescriptor& grid() const noexcept { return grid_; }
  const MwWeights& weights() const noexcept { return weights_; }
  const DeltaTable& delta() const noexcept { return delta_; }

  TorusSpectrum torus_spectrum(const SphereSignal& signal);
  HarmonicCoeffs forward(const SphereSignal& signal);
  SphereSignal inverse(const HarmonicCoeffs& coeffs);
  Complex integrate(const SphereSignal& signal) const;

 private:
  GridDescriptor grid_;
  DeltaTable delta_;
  MwWeights weights_;
  Dft dft_;
};

HarmonicCoeffs mw_forward(const SphereSignal& signal);
SphereSignal mw_inverse(const HarmonicCoeffs& coeffs, BandLimit L);
Complex mw_integrate(const SphereSignal& signal);

}  // namespace sphsamp
