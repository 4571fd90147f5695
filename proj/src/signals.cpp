#include "sphsamp/signals.hpp"

#include "sphsamp/dh_transform.hpp"
#include "sphsamp/mw_transform.hpp"
#include "sphsamp/special_functions.hpp"

#include <cmath>
#include <numbers>

namespace sphsamp {

using std::numbers::pi;

HarmonicCoeffs cap_coefficients(BandLimit L, std::span<const Cap> caps, double smoothing) {
  HarmonicCoeffs out{L};
  for (const Cap& cap : caps) {
    const double x0 = std::cos(cap.radius);
    for (int l = 0; l < L; ++l) {
      // Axisymmetric cap about the north pole: f_l0 = 2pi sqrt((2l+1)/4pi) int_{x0}^1 P_l.
      const double integral =
          l == 0 ? 1.0 - x0 : (legendre(l - 1, 0, x0) - legendre(l + 1, 0, x0)) / (2.0 * l + 1.0);
      const double axial = 2.0 * pi * std::sqrt((2.0 * l + 1.0) / (4.0 * pi)) * integral;
      const double beam = std::exp(-0.5 * l * (l + 1.0) * smoothing * smoothing);
      // Rotation to the cap centre: f_lm = sqrt(4pi/(2l+1)) f_l0 conj(Y_lm(centre)).
      const double scale = cap.amplitude * beam * axial * std::sqrt(4.0 * pi / (2.0 * l + 1.0));
      for (int m = -l; m <= l; ++m) out(l, m) += scale * std::conj(ylm(l, m, cap.theta, cap.phi));
    }
  }
  return out;
}

SphereSignal synthesize(const HarmonicCoeffs& coeffs, const GridDescriptor& grid) {
  if (coeffs.L() != grid.L) throw ContractError("synthesize: band-limit mismatch");
  if (grid.kind == GridKind::DH) return DhTransform{BandLimit(grid.L)}.inverse(coeffs);
  return MwTransform{BandLimit(grid.L)}.inverse(coeffs);
}

TestSignal make_cap_signal(const GridDescriptor& grid, std::span<const Cap> caps, double smoothing) {
  if (grid.L < 2) throw std::domain_error("cap signals need L >= 2");
  HarmonicCoeffs coeffs = cap_coefficients(BandLimit(grid.L), caps, smoothing);
  SphereSignal signal = synthesize(coeffs, grid);
  signal.values() = signal.values().real().cast<Complex>();
  return {std::move(signal), std::move(coeffs)};
}

double default_smoothing(int L) { return 3.0 / L; }

std::vector<Cap> default_caps() {
  return {
      {0.90, 0.80, 0.55, 1.0},
      {1.90, 2.20, 0.45, 1.0},
      {1.30, 4.00, 0.70, 1.0},
      {2.60, 5.30, 0.30, 1.0},
      {0.35, 3.60, 0.30, 1.0},
  };
}

std::vector<Cap> two_caps() {
  return {
      {0.90, 0.80, 0.55, 1.0},
      {1.90, 2.20, 0.45, 1.0},
  };
}

}  // namespace sphsamp
