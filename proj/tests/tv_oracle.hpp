#pragma once

// Continuous TV norm int |grad f| dOmega of a band-limited real function,
// evaluated directly from its harmonic expansion on an n x n midpoint grid.
// Test-only oracle: it shares no code with the finite-difference stencil.

#include "sphsamp/special_functions.hpp"

#include <unsupported/Eigen/FFT>

#include <cmath>
#include <numbers>
#include <vector>

namespace sphsamp::testing {

inline double continuous_tv(const HarmonicCoeffs& coeffs, int n) {
  using std::numbers::pi;
  const int L = coeffs.L();
  const double h = 1e-3;
  Eigen::FFT<double> fft;
  fft.SetFlag(Eigen::FFT<double>::Unscaled);
  std::vector<std::complex<double>> spec_f(n), spec_dth(n), spec_dph(n), f(n), dth(n), dph(n);
  double total = 0.0;
  for (int i = 0; i < n; ++i) {
    const double th = (i + 0.5) * pi / n;
    const VectorXr lam = normalized_legendre(L, th);
    const VectorXr lp1 = normalized_legendre(L, th + h), lm1 = normalized_legendre(L, th - h);
    const VectorXr lp2 = normalized_legendre(L, th + 2 * h), lm2 = normalized_legendre(L, th - 2 * h);
    const VectorXr dlam = (lm2 - 8.0 * lm1 + 8.0 * lp1 - lp2) / (12.0 * h);
    std::fill(spec_f.begin(), spec_f.end(), 0.0);
    std::fill(spec_dth.begin(), spec_dth.end(), 0.0);
    std::fill(spec_dph.begin(), spec_dph.end(), 0.0);
    for (int m = -(L - 1); m <= L - 1; ++m) {
      const int am = std::abs(m);
      const double sign = (m < 0 && (am & 1)) ? -1.0 : 1.0;
      std::complex<double> g = 0.0, dg = 0.0;
      for (int l = am; l < L; ++l) {
        g += coeffs(l, m) * lam(tri_index(l, am));
        dg += coeffs(l, m) * dlam(tri_index(l, am));
      }
      const int slot = ((m % n) + n) % n;
      spec_f[slot] = sign * g;
      spec_dth[slot] = sign * dg;
      spec_dph[slot] = sign * std::complex<double>(0.0, m) * g;
    }
    fft.inv(dth, spec_dth);
    fft.inv(dph, spec_dph);
    const double s = std::sin(th);
    double ring = 0.0;
    for (int j = 0; j < n; ++j) {
      const double a = dth[j].real(), b = dph[j].real() / s;
      ring += std::sqrt(a * a + b * b);
    }
    total += ring * s * (pi / n) * (2 * pi / n);
  }
  return total;
}

}  // namespace sphsamp::testing
