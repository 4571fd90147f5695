#include "sphsamp/reference.hpp"

#include "sphsamp/special_functions.hpp"

namespace sphsamp::reference {

SphereSignal synthesize(const HarmonicCoeffs& coeffs, const GridDescriptor& grid) {
  if (coeffs.L() != grid.L) throw ContractError("reference synthesis: band-limit mismatch");
  SphereSignal out(grid);
  for (int t = 0; t < grid.n_theta; ++t) {
    const int width = grid.is_pole_row(t) ? 1 : grid.n_phi;
    for (int p = 0; p < width; ++p) {
      Complex acc = 0.0;
      for (int l = 0; l < grid.L; ++l)
        for (int m = -l; m <= l; ++m) acc += coeffs(l, m) * ylm(l, m, grid.theta(t), grid.phi(p));
      out(t, p) = acc;
    }
  }
  return out;
}

HarmonicCoeffs quadrature_analysis(const SphereSignal& signal, const VectorXr& ring_weights) {
  const GridDescriptor& grid = signal.grid();
  if (ring_weights.size() != grid.n_theta) throw ContractError("reference analysis: weight length mismatch");
  HarmonicCoeffs out{BandLimit(grid.L)};
  for (int t = 0; t < grid.n_theta; ++t)
    for (int p = 0; p < grid.n_phi; ++p) {
      const Complex f = ring_weights(t) * signal(t, p);
      for (int l = 0; l < grid.L; ++l)
        for (int m = -l; m <= l; ++m) out(l, m) += f * std::conj(ylm(l, m, grid.theta(t), grid.phi(p)));
    }
  return out;
}

}  // namespace sphsamp::reference
