#pragma once

#include "sphsamp/sphere_core.hpp"

#include <span>
#include <vector>

namespace sphsamp {

/// Indicator of a spherical cap of angular radius `radius` centred at
/// (theta, phi), scaled by `amplitude`.
struct Cap {
  double theta;
  double phi;
  double radius;
  double amplitude = 1.0;
};

/// Real test signal in both representations.
struct TestSignal {
  SphereSignal signal;
  HarmonicCoeffs coeffs;
};

/// Harmonic coefficients of a sum of cap indicators, multiplied by the
/// Gaussian beam exp(-l(l+1) s^2 / 2) with s = `smoothing` (radians) and
/// truncated to l < L.
HarmonicCoeffs cap_coefficients(BandLimit L, std::span<const Cap> caps, double smoothing);

/// Smoothed caps synthesized on `grid`. Throws std::domain_error for L < 2.
TestSignal make_cap_signal(const GridDescriptor& grid, std::span<const Cap> caps, double smoothing);

/// Default beam width for band-limit L: 3/L radians (beam ~1e-2 at l = L-1 for L = 32).
double default_smoothing(int L);

/// Five disjoint caps of assorted sizes standing in for a binary land mask.
std::vector<Cap> default_caps();

/// Two disjoint caps.
std::vector<Cap> two_caps();

/// Synthesizes coefficients on a grid with the matching transform.
SphereSignal synthesize(const HarmonicCoeffs& coeffs, const GridDescriptor& grid);

}  // namespace sphsamp
