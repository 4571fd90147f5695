#pragma once

#include "sphsamp/fourier.hpp"
#include "sphsamp/sphere_core.hpp"
#include "sphsamp/synthesis.hpp"

namespace sphsamp {

/// Per-ring quadrature weights of the Driscoll-Healy grid.
struct DhWeights {
  int L;
  VectorXr q;  // length 2L; q(0) = 0 at the north pole
};

/// q(theta_t) = (2 pi / L^2) sin(theta_t) sum_{k<L} sin((2k+1) theta_t) / (2k+1).
DhWeights dh_weights(BandLimit L);

/// Driscoll-Healy transform plan for one band-limit.
///
/// forward() evaluates the quadrature sum
///   f_lm = sum_t sum_p q(theta_t) f(theta_t, phi_p) conj(Y_lm(theta_t, phi_p))
/// with the phi sums done as length-2L DFTs; inverse() synthesizes the
/// expansion at every node. Both are O(L^3). The pole ring carries zero weight
/// and does not contribute to forward().
class DhTransform {
 public:
  explicit DhTransform(BandLimit L);

  const GridDescriptor& grid() const noexcept { return synthesis_.grid(); }
  const DhWeights& weights() const noexcept { return weights_; }

  HarmonicCoeffs forward(const SphereSignal& signal);
  SphereSignal inverse(const HarmonicCoeffs& coeffs);
  Complex integrate(const SphereSignal& signal) const;

 private:
  DhWeights weights_;
  Synthesis synthesis_;
  Dft dft_;
};

HarmonicCoeffs dh_forward(const SphereSignal& signal);
SphereSignal dh_inverse(const HarmonicCoeffs& coeffs, BandLimit L);
Complex dh_integrate(const SphereSignal& signal);

}  // namespace sphsamp
