#include "sphsamp/dh_transform.hpp"
#include "sphsamp/mw_transform.hpp"
#include "sphsamp/reference.hpp"
#include "sphsamp/special_functions.hpp"
#include "sphsamp/synthesis.hpp"
#include "test_support.hpp"

#include <gtest/gtest.h>

#include <numbers>

using namespace sphsamp;
using namespace sphsamp::testing;
using std::numbers::pi;

namespace {

SphereSignal sample_harmonic(const GridDescriptor& g, int l, int m) {
  SphereSignal s(g);
  for (int t = 0; t < g.n_theta; ++t)
    for (int p = 0; p < g.n_phi; ++p) s(t, p) = ylm(l, m, g.theta(t), g.phi(p));
  return s;
}

HarmonicCoeffs pad(const HarmonicCoeffs& c, int L) {
  HarmonicCoeffs out{BandLimit(L)};
  out.values().head(c.size()) = c.values();
  return out;
}

}  // namespace

TEST(MwWeights, ClosedFormValues) {
  EXPECT_EQ(mw_weight(0), Complex(2.0));
  EXPECT_EQ(mw_weight(1), Complex(0.0, pi / 2));
  EXPECT_EQ(mw_weight(-1), Complex(0.0, -pi / 2));
  EXPECT_EQ(mw_weight(3), Complex(0.0));
  EXPECT_NEAR(mw_weight(2).real(), -2.0 / 3.0, 1e-16);
  const MwWeights w = mw_weights(BandLimit(5));
  EXPECT_EQ(w.w.size(), 4 * 5 - 3);
  for (int k = -8; k <= 8; ++k) EXPECT_EQ(w.w_at(k), mw_weight(k));
}

TEST(MwWeights, ClosedFormMatchesIntegral) {
  // w(m') = int_0^pi sin(t) e^{i m' t} dt by composite Simpson.
  const int n = 20000;
  for (int k = -6; k <= 6; ++k) {
    Complex acc = 0.0;
    for (int i = 0; i <= n; ++i) {
      const double t = pi * i / n;
      const double c = (i == 0 || i == n) ? 1.0 : (i % 2 ? 4.0 : 2.0);
      acc += c * std::sin(t) * std::polar(1.0, k * t);
    }
    acc *= pi / n / 3.0;
    EXPECT_LT(std::abs(acc - mw_weight(k)), 1e-12) << k;
  }
}

TEST(MwWeights, IntegrateConstant) {
  for (int L = 1; L <= 64; ++L) {
    const MwWeights w = mw_weights(BandLimit(L));
    EXPECT_TRUE(w.q.allFinite());
    EXPECT_NEAR(w.q.sum() * (2 * L - 1), 4 * pi, 1e-10) << L;
  }
  EXPECT_NEAR(mw_weights(BandLimit(1)).q(0), 4 * pi, 1e-14);
}

TEST(MwForward, ConstantSignal) {
  for (int L : {1, 2, 7}) {
    const auto g = make_grid(GridKind::MW, BandLimit(L));
    const Complex c(-1.5, 0.25);
    HarmonicCoeffs f = mw_forward(SphereSignal(g, VectorXc::Constant(g.n_samples, c)));
    EXPECT_LT(std::abs(f(0, 0) - c * std::sqrt(4 * pi)), 1e-10);
    f(0, 0) = 0.0;
    EXPECT_LT(max_abs(f.values()), 1e-10);
  }
}

TEST(MwForward, SingleHarmonicAndCrossCheckWithDh) {
  const int L = 8;
  const HarmonicCoeffs mw = mw_forward(sample_harmonic(make_grid(GridKind::MW, BandLimit(L)), 3, 2));
  const HarmonicCoeffs dh = dh_forward(sample_harmonic(make_grid(GridKind::DH, BandLimit(L)), 3, 2));
  HarmonicCoeffs expect{BandLimit(L)};
  expect(3, 2) = 1.0;
  EXPECT_LT(max_abs(mw.values() - expect.values()), 1e-10);
  EXPECT_LT(max_abs(mw.values() - dh.values()), 1e-10);
}

TEST(MwInverse, TrivialCases) {
  const auto zero = mw_inverse(HarmonicCoeffs{BandLimit(6)}, BandLimit(6));
  EXPECT_EQ(max_abs(zero.values()), 0.0);
  HarmonicCoeffs c{BandLimit(6)};
  c(0, 0) = std::sqrt(4 * pi);
  const auto one = mw_inverse(c, BandLimit(6));
  EXPECT_LT(max_abs(one.values() - VectorXc::Ones(one.size())), 1e-13);
}

TEST(MwInverse, MatchesDirectAndLegendreSynthesis) {
  std::mt19937_64 rng(17);
  for (int L : {1, 2, 3, 6, 11}) {
    const auto g = make_grid(GridKind::MW, BandLimit(L));
    const HarmonicCoeffs c = random_coeffs(L, rng);
    const VectorXc fast = mw_inverse(c, BandLimit(L)).values();
    const VectorXc slow = reference::synthesize(c, g).values();
    Synthesis legendre_path(g);
    EXPECT_LT(max_abs(fast - slow), 1e-12) << L;
    EXPECT_LT(max_abs(fast - legendre_path.apply(c.values())), 1e-12) << L;
  }
}

TEST(MwTransform, RoundTripAgreesWithDhAcrossBandLimits) {
  std::mt19937_64 rng(23);
  for (int L = 1; L <= 64; ++L) {
    const HarmonicCoeffs c = random_coeffs(L, rng);
    MwTransform mw{BandLimit(L)};
    DhTransform dh{BandLimit(L)};
    const VectorXc via_mw = mw.forward(mw.inverse(c)).values();
    const VectorXc via_dh = dh.forward(dh.inverse(c)).values();
    EXPECT_LT(max_abs(via_mw - c.values()), 1e-9) << L;
    EXPECT_LT(max_abs(via_dh - c.values()), 1e-9) << L;
  }
}

TEST(MwTransform, RoundTripL32) {
  std::mt19937_64 rng(29);
  MwTransform plan{BandLimit(32)};
  for (int rep = 0; rep < 3; ++rep) {
    const HarmonicCoeffs c = random_coeffs(32, rng);
    EXPECT_LT(max_abs(plan.forward(plan.inverse(c)).values() - c.values()), 1e-9);
  }
}

TEST(MwTransform, ExtensionSymmetryHolds) {
  std::mt19937_64 rng(31);
  const int L = 9;
  MwTransform plan{BandLimit(L)};
  const TorusSpectrum ts = plan.torus_spectrum(plan.inverse(random_coeffs(L, rng)));
  for (int t = 0; t < L - 1; ++t)
    for (int m = -(L - 1); m <= L - 1; ++m) {
      const double sign = (m & 1) ? -1.0 : 1.0;
      EXPECT_EQ(ts.G_ext(2 * L - 2 - t, m + L - 1), sign * ts.G_ext(t, m + L - 1));
    }
}

TEST(MwTransform, RejectsForeignGrid) {
  EXPECT_THROW(mw_forward(SphereSignal(make_grid(GridKind::DH, BandLimit(4)))), ContractError);
  EXPECT_THROW(mw_inverse(HarmonicCoeffs{BandLimit(4)}, BandLimit(5)), ContractError);
}

TEST(MwTransform, SampleEfficiency) {
  for (int L = 2; L <= 512; ++L)
    EXPECT_LT(sample_count(GridKind::MW, BandLimit(L)), sample_count(GridKind::DH, BandLimit(L)) / 2.0 + 2.0);
}

TEST(MwIntegrate, Examples) {
  const auto g = make_grid(GridKind::MW, BandLimit(8));
  EXPECT_LT(std::abs(mw_integrate(SphereSignal(g, VectorXc::Ones(g.n_samples))) - 4 * pi), 1e-10);
  EXPECT_LT(std::abs(mw_integrate(sample_harmonic(g, 2, 0))), 1e-10);
}

TEST(MwIntegrate, SquaredFunctionMatchesTrapezoidOracle) {
  std::mt19937_64 rng(37);
  const HarmonicCoeffs c5 = random_coeffs(5, rng);
  auto f = [&](double th, double ph) {
    Complex acc = 0.0;
    for (int l = 0; l < 5; ++l)
      for (int m = -l; m <= l; ++m) acc += c5(l, m) * ylm(l, m, th, ph);
    return acc * acc;
  };
  // 2048 x 2048 trapezoid rule; exact in phi for this trigonometric
  // polynomial, extrapolated in theta.
  const int n = 2048;
  const Complex oracle = trapezoid_theta(
      [&](double th) {
        Complex ring = 0.0;
        for (int j = 0; j < n; ++j) ring += f(th, 2 * pi * j / n);
        return ring * (2 * pi / n);
      },
      n);
  const auto g = make_grid(GridKind::MW, BandLimit(9));
  SphereSignal s(g);
  for (int t = 0; t < g.n_theta; ++t)
    for (int p = 0; p < g.n_phi; ++p) s(t, p) = f(g.theta(t), g.phi(p));
  EXPECT_LT(std::abs(mw_integrate(s) - oracle), 1e-8);
}

TEST(MwIntegrate, ParsevalOnBandLimitedPairs) {
  std::mt19937_64 rng(41);
  const int L = 8, Lq = 2 * L - 1;
  MwTransform plan{BandLimit(Lq)};
  for (int rep = 0; rep < 5; ++rep) {
    const HarmonicCoeffs a = random_coeffs(L, rng), b = random_coeffs(L, rng);
    const VectorXc fa = plan.inverse(pad(a, Lq)).values();
    const VectorXc fb = plan.inverse(pad(b, Lq)).values();
    const SphereSignal prod(plan.grid(), fa.cwiseProduct(fb.conjugate()));
    const Complex expect = b.values().dot(a.values());  // sum a conj(b)
    EXPECT_LT(std::abs(plan.integrate(prod) - expect), 1e-9);
  }
}

TEST(MwIntegrate, QuadratureOfRandomBandLimited) {
  std::mt19937_64 rng(43);
  for (int L : {1, 2, 5, 16, 40, 64}) {
    MwTransform plan{BandLimit(L)};
    for (int rep = 0; rep < 3; ++rep) {
      const HarmonicCoeffs c = random_coeffs(L, rng);
      EXPECT_LT(std::abs(plan.integrate(plan.inverse(c)) - std::sqrt(4 * pi) * c(0, 0)), 1e-10) << L;
    }
  }
}
