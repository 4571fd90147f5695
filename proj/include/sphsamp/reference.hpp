#pragma once

#include "sphsamp/sphere_core.hpp"

namespace sphsamp::reference {

// Direct O(L^2 N) evaluations built on ylm(); slow, used to check the fast paths.

/// f(theta_t, phi_p) = sum_lm f_lm Y_lm(theta_t, phi_p) at every stored node.
SphereSignal synthesize(const HarmonicCoeffs& coeffs, const GridDescriptor& grid);

/// f_lm = sum_t sum_p q(theta_t) f(theta_t, phi_p) conj(Y_lm), full rings
/// (pole rings counted n_phi times).
HarmonicCoeffs quadrature_analysis(const SphereSignal& signal, const VectorXr& ring_weights);

}  // namespace sphsamp::reference
