#include "sphsamp/mw_transform.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace sphsamp {

using std::numbers::pi;

namespace {

void require_mw(const GridDescriptor& expected, const GridDescriptor& got) {
  if (got.kind != GridKind::MW) throw ContractError("expected an MW grid, got " + std::string(to_string(got.kind)));
  if (got.L != expected.L)
    throw ContractError("MW band-limit mismatch: plan L=" + std::to_string(expected.L) +
                        ", signal L=" + std::to_string(got.L));
}

}  // namespace

Complex mw_weight(int m_prime) {
  if (m_prime == 1) return {0.0, pi / 2.0};
  if (m_prime == -1) return {0.0, -pi / 2.0};
  if (m_prime % 2 != 0) return 0.0;
  return 2.0 / (1.0 - double(m_prime) * m_prime);
}

MwWeights mw_weights(BandLimit L) {
  const int l = L;
  const int n = 2 * l - 1;
  MwWeights out{l, VectorXc(4 * l - 3), VectorXc(n), VectorXr(l)};
  for (int k = -2 * (l - 1); k <= 2 * (l - 1); ++k) out.w(k + 2 * (l - 1)) = mw_weight(k);

  for (int t = 0; t < n; ++t) {
    const double theta = pi * (2.0 * t + 1.0) / n;
    Complex sum = 0.0;
    for (int mp = -(l - 1); mp <= l - 1; ++mp) sum += out.w_at(-mp) * std::polar(1.0, mp * theta);
    out.v(t) = sum / double(n);
  }
  for (int t = 0; t < l; ++t) {
    Complex q = out.v(t);
    if (t != l - 1) q += out.v(2 * l - 2 - t);
    q *= 2.0 * pi / n;
    if (std::abs(q.imag()) > 1e-12)
      throw std::runtime_error("MW quadrature weight has imaginary residue " + std::to_string(q.imag()));
    out.q(t) = q.real();
  }
  return out;
}

MwTransform::MwTransform(BandLimit L)
    : grid_(make_grid(GridKind::MW, L)), delta_(build_delta_table(L)), weights_(mw_weights(L)) {}

TorusSpectrum MwTransform::torus_spectrum(const SphereSignal& signal) {
  require_mw(grid_, signal.grid());
  const int L = grid_.L;
  const int n = 2 * L - 1;
  const int off = L - 1;
  TorusSpectrum ts{L, Eigen::MatrixXcd(L, n), Eigen::MatrixXcd(n, n), Eigen::MatrixXcd(n, n),
                   Eigen::MatrixXcd(n, n)};

  std::vector<Complex> in(n), out(n);
  for (int t = 0; t < L; ++t) {
    for (int p = 0; p < n; ++p) in[p] = signal(t, p);
    dft_.forward(in, out);
    for (int m = -off; m <= off; ++m) ts.G(t, m + off) = (2.0 * pi / n) * out[freq_slot(m, n)];
  }

  for (int t = 0; t < n; ++t)
    for (int m = -off; m <= off; ++m)
      ts.G_ext(t, m + off) = t < L ? ts.G(t, m + off) : parity(m) * ts.G(2 * L - 2 - t, m + off);

  for (int m = -off; m <= off; ++m) {
    for (int t = 0; t < n; ++t) in[t] = ts.G_ext(t, m + off);
    dft_.forward(in, out);
    for (int mp = -off; mp <= off; ++mp)
      ts.F(m + off, mp + off) = out[freq_slot(mp, n)] * std::polar(1.0, -mp * pi / n) / (2.0 * pi * n);
  }

  for (int m = -off; m <= off; ++m)
    for (int mp = -off; mp <= off; ++mp) {
      Complex acc = 0.0;
      for (int mpp = -off; mpp <= off; ++mpp) acc += ts.F(m + off, mpp + off) * weights_.w_at(mpp - mp);
      ts.Gmm(m + off, mp + off) = 2.0 * pi * acc;
    }
  return ts;
}

HarmonicCoeffs MwTransform::forward(const SphereSignal& signal) {
  const TorusSpectrum ts = torus_spectrum(signal);
  const int L = grid_.L;
  const int off = L - 1;
  HarmonicCoeffs out{BandLimit(L)};
  for (int l = 0; l < L; ++l) {
    const double norm = std::sqrt((2.0 * l + 1.0) / (4.0 * pi));
    const Eigen::MatrixXd& d = delta_.slice(l);
    for (int m = -l; m <= l; ++m) {
      Complex acc = 0.0;
      for (int mp = -l; mp <= l; ++mp) acc += d(mp + l, m + l) * d(mp + l, l) * ts.Gmm(m + off, mp + off);
      out(l, m) = ipow(m) * norm * acc;
    }
  }
  return out;
}

SphereSignal MwTransform::inverse(const HarmonicCoeffs& coeffs) {
  const int L = grid_.L;
  if (coeffs.L() != L) throw ContractError("MW inverse: coefficient band-limit mismatch");
  const int n = 2 * L - 1;
  const int off = L - 1;

  // Fhat(m, m') = i^{-m} sum_l sqrt((2l+1)/4pi) f_lm Delta_{m'm} Delta_{m'0}
  Eigen::MatrixXcd fhat = Eigen::MatrixXcd::Zero(n, n);
  for (int l = 0; l < L; ++l) {
    const double norm = std::sqrt((2.0 * l + 1.0) / (4.0 * pi));
    const Eigen::MatrixXd& d = delta_.slice(l);
    for (int m = -l; m <= l; ++m) {
      const Complex c = norm * coeffs(l, m);
      for (int mp = -l; mp <= l; ++mp) fhat(m + off, mp + off) += c * d(mp + l, m + l) * d(mp + l, l);
    }
  }

  // theta synthesis: G_m(theta_t) = sum_{m'} Fhat(m, m') e^{i m' theta_t}
  Eigen::MatrixXcd ring_spectra(L, n);  // row t, column slot(m)
  std::vector<Complex> in(n), out(n);
  for (int m = -off; m <= off; ++m) {
    const Complex phase_m = ipow(-m);
    for (int mp = -off; mp <= off; ++mp)
      in[freq_slot(mp, n)] = phase_m * fhat(m + off, mp + off) * std::polar(1.0, mp * pi / n);
    dft_.backward(in, out);
    for (int t = 0; t < L; ++t) ring_spectra(t, freq_slot(m, n)) = out[t];
  }

  SphereSignal signal(grid_);
  for (int t = 0; t < L; ++t) {
    for (int k = 0; k < n; ++k) in[k] = ring_spectra(t, k);
    dft_.backward(in, out);
    const int width = grid_.is_pole_row(t) ? 1 : n;
    for (int p = 0; p < width; ++p) signal(t, p) = out[p];
  }
  return signal;
}

Complex MwTransform::integrate(const SphereSignal& signal) const {
  require_mw(grid_, signal.grid());
  Complex sum = 0.0;
  for (int t = 0; t < grid_.n_theta; ++t) {
    Complex ring = 0.0;
    for (int p = 0; p < grid_.n_phi; ++p) ring += signal(t, p);
    sum += weights_.q(t) * ring;
  }
  return sum;
}

HarmonicCoeffs mw_forward(const SphereSignal& signal) {
  MwTransform plan{BandLimit(signal.grid().L)};
  return plan.forward(signal);
}

SphereSignal mw_inverse(const HarmonicCoeffs& coeffs, BandLimit L) {
  if (coeffs.L() != L) throw ContractError("mw_inverse: coefficient band-limit mismatch");
  MwTransform plan{L};
  return plan.inverse(coeffs);
}

Complex mw_integrate(const SphereSignal& signal) {
  if (signal.grid().kind != GridKind::MW) throw ContractError("mw_integrate: expected an MW grid");
  return MwTransform{BandLimit(signal.grid().L)}.integrate(signal);
}

}  // namespace sphsamp
