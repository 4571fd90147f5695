#include "sphsamp/synthesis.hpp"

#include "sphsamp/special_functions.hpp"

namespace sphsamp {

Synthesis::Synthesis(const GridDescriptor& grid)
    : grid_(grid),
      legendre_(grid.n_theta, grid.L * (grid.L + 1) / 2),
      ring_in_(grid.n_phi),
      ring_out_(grid.n_phi) {
  for (int t = 0; t < grid.n_theta; ++t) legendre_.row(t) = normalized_legendre(grid.L, grid.theta(t)).transpose();
}

VectorXc Synthesis::apply(const VectorXc& coeffs) {
  const int L = grid_.L;
  const int n = grid_.n_phi;
  if (coeffs.size() != L * L) throw ContractError("synthesis: coefficient length mismatch");
  VectorXc out(grid_.n_samples);
  for (int t = 0; t < grid_.n_theta; ++t) {
    std::fill(ring_in_.begin(), ring_in_.end(), Complex(0.0));
    for (int m = -(L - 1); m <= L - 1; ++m) {
      const int am = std::abs(m);
      const double sign = m < 0 ? parity(am) : 1.0;
      Complex acc = 0.0;
      for (int l = am; l < L; ++l) acc += coeffs(l * l + l + m) * legendre_(t, tri_index(l, am));
      ring_in_[freq_slot(m, n)] += sign * acc;
    }
    dft_.backward(ring_in_, ring_out_);
    const int width = grid_.is_pole_row(t) ? 1 : n;
    for (int p = 0; p < width; ++p) out(grid_.stored_index(t, p)) = ring_out_[p];
  }
  return out;
}

VectorXc Synthesis::adjoint(const VectorXc& samples) {
  const int L = grid_.L;
  const int n = grid_.n_phi;
  if (samples.size() != grid_.n_samples) throw ContractError("synthesis adjoint: sample length mismatch");
  VectorXc out = VectorXc::Zero(L * L);
  for (int t = 0; t < grid_.n_theta; ++t) {
    std::fill(ring_in_.begin(), ring_in_.end(), Complex(0.0));
    const int width = grid_.is_pole_row(t) ? 1 : n;
    for (int p = 0; p < width; ++p) ring_in_[p] = samples(grid_.stored_index(t, p));
    dft_.forward(ring_in_, ring_out_);
    for (int m = -(L - 1); m <= L - 1; ++m) {
      const int am = std::abs(m);
      const double sign = m < 0 ? parity(am) : 1.0;
      const Complex g = sign * ring_out_[freq_slot(m, n)];
      for (int l = am; l < L; ++l) out(l * l + l + m) += g * legendre_(t, tri_index(l, am));
    }
  }
  return out;
}

}  // namespace sphsamp
