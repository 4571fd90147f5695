#include "sphsamp/dh_transform.hpp"
#include "sphsamp/reference.hpp"
#include "sphsamp/special_functions.hpp"
#include "sphsamp/synthesis.hpp"
#include "test_support.hpp"

#include <gtest/gtest.h>

#include <numbers>

using namespace sphsamp;
using namespace sphsamp::testing;
using std::numbers::pi;

TEST(DhWeights, Examples) {
  const DhWeights w1 = dh_weights(BandLimit(1));
  ASSERT_EQ(w1.q.size(), 2);
  EXPECT_EQ(w1.q(0), 0.0);
  EXPECT_NEAR(w1.q(1), 2 * pi, 1e-14);
  EXPECT_NEAR(dh_weights(BandLimit(4)).q.sum(), pi / 2, 1e-14);
}

TEST(DhWeights, NonNegativeAndSumToTwoPiOverL) {
  for (int L = 1; L <= 64; ++L) {
    const VectorXr q = dh_weights(BandLimit(L)).q;
    EXPECT_EQ(q(0), 0.0);
    EXPECT_GE(q.minCoeff(), 0.0);
    EXPECT_TRUE(q.allFinite());
    EXPECT_NEAR(q.sum(), 2 * pi / L, 1e-13);
  }
}

TEST(DhWeights, ImplicitConditionHoldsBelowTwiceTheBandLimit) {
  for (int L : {1, 2, 3, 5, 8, 16, 33, 64}) {
    const auto g = make_grid(GridKind::DH, BandLimit(L));
    const VectorXr q = dh_weights(BandLimit(L)).q;
    for (int l = 0; l < 2 * L; ++l) {
      double sum = 0.0;
      for (int t = 0; t < g.n_theta; ++t) sum += q(t) * legendre(l, 0, std::cos(g.theta(t)));
      EXPECT_NEAR(sum, l == 0 ? 2 * pi / L : 0.0, 1e-10) << "L=" << L << " l=" << l;
    }
  }
}

TEST(DhForward, ConstantSignal) {
  const auto g = make_grid(GridKind::DH, BandLimit(6));
  const Complex c(2.5, -0.5);
  const SphereSignal s(g, VectorXc::Constant(g.n_samples, c));
  HarmonicCoeffs f = dh_forward(s);
  EXPECT_LT(std::abs(f(0, 0) - c * std::sqrt(4 * pi)), 1e-10);
  f(0, 0) = 0.0;
  EXPECT_LT(max_abs(f.values()), 1e-10);
}

TEST(DhForward, SingleHarmonicAgreesWithDirectQuadrature) {
  const int L = 6;
  const auto g = make_grid(GridKind::DH, BandLimit(L));
  SphereSignal s(g);
  for (int t = 0; t < g.n_theta; ++t)
    for (int p = 0; p < g.n_phi; ++p) s(t, p) = ylm(2, 1, g.theta(t), g.phi(p));
  const HarmonicCoeffs fast = dh_forward(s);
  const HarmonicCoeffs slow = reference::quadrature_analysis(s, dh_weights(BandLimit(L)).q);
  HarmonicCoeffs expect{BandLimit(L)};
  expect(2, 1) = 1.0;
  EXPECT_LT(max_abs(fast.values() - expect.values()), 1e-10);
  EXPECT_LT(max_abs(slow.values() - expect.values()), 1e-10);
}

TEST(DhInverse, TrivialCases) {
  const auto zero = dh_inverse(HarmonicCoeffs{BandLimit(5)}, BandLimit(5));
  EXPECT_EQ(max_abs(zero.values()), 0.0);
  HarmonicCoeffs c{BandLimit(5)};
  c(0, 0) = std::sqrt(4 * pi);
  const auto one = dh_inverse(c, BandLimit(5));
  EXPECT_LT(max_abs(one.values() - VectorXc::Ones(one.size())), 1e-13);
}

TEST(DhInverse, MatchesDirectSynthesis) {
  std::mt19937_64 rng(3);
  for (int L : {1, 2, 5, 9}) {
    const HarmonicCoeffs c = random_coeffs(L, rng);
    const SphereSignal fast = dh_inverse(c, BandLimit(L));
    const SphereSignal slow = reference::synthesize(c, make_grid(GridKind::DH, BandLimit(L)));
    EXPECT_LT(max_abs(fast.values() - slow.values()), 1e-12);
  }
}

TEST(DhTransform, RoundTripIsExact) {
  std::mt19937_64 rng(5);
  for (int L : {1, 2, 4, 8, 16, 32, 64}) {
    DhTransform plan{BandLimit(L)};
    for (int rep = 0; rep < 3; ++rep) {
      const HarmonicCoeffs c = random_coeffs(L, rng);
      const HarmonicCoeffs back = plan.forward(plan.inverse(c));
      EXPECT_LT(max_abs(back.values() - c.values()), L <= 16 ? 1e-10 : 1e-9) << "L=" << L;
    }
  }
}

TEST(DhTransform, Linearity) {
  std::mt19937_64 rng(9);
  const int L = 7;
  DhTransform plan{BandLimit(L)};
  const auto g = plan.grid();
  const SphereSignal x(g, random_complex(g.n_samples, rng)), y(g, random_complex(g.n_samples, rng));
  const Complex a(0.3, -1.2), b(2.0, 0.5);
  const SphereSignal combo(g, a * x.values() + b * y.values());
  const VectorXc lhs = plan.forward(combo).values();
  const VectorXc rhs = a * plan.forward(x).values() + b * plan.forward(y).values();
  EXPECT_LT(max_abs(lhs - rhs), 1e-12);
  const HarmonicCoeffs u = random_coeffs(L, rng), v = random_coeffs(L, rng);
  const VectorXc s1 = plan.inverse(HarmonicCoeffs(BandLimit(L), a * u.values() + b * v.values())).values();
  const VectorXc s2 = a * plan.inverse(u).values() + b * plan.inverse(v).values();
  EXPECT_LT(max_abs(s1 - s2), 1e-12);
}

TEST(DhTransform, RejectsForeignGrid) {
  const SphereSignal mw(make_grid(GridKind::MW, BandLimit(4)));
  EXPECT_THROW(dh_forward(mw), ContractError);
  DhTransform plan{BandLimit(4)};
  EXPECT_THROW(plan.forward(SphereSignal(make_grid(GridKind::DH, BandLimit(5)))), ContractError);
  EXPECT_THROW(dh_inverse(HarmonicCoeffs{BandLimit(3)}, BandLimit(4)), ContractError);
}

TEST(DhIntegrate, Examples) {
  const auto g = make_grid(GridKind::DH, BandLimit(8));
  EXPECT_LT(std::abs(dh_integrate(SphereSignal(g, VectorXc::Ones(g.n_samples))) - 4 * pi), 1e-12);
  SphereSignal y11(g);
  for (int t = 0; t < g.n_theta; ++t)
    for (int p = 0; p < g.n_phi; ++p) y11(t, p) = ylm(1, 1, g.theta(t), g.phi(p));
  EXPECT_LT(std::abs(dh_integrate(y11)), 1e-10);
}

TEST(DhIntegrate, SquaredHarmonicMatchesTrapezoidOracle) {
  auto f = [](double th) {
    const double v = 1.0 + ylm(2, 0, th, 0.0).real();
    return v * v;
  };
  // 2048 x 2048 trapezoid rule over (theta, phi); the phi rule is exact for
  // this axisymmetric integrand.
  const int n = 2048;
  const double oracle = trapezoid_theta(
      [&](double th) {
        double ring = 0.0;
        for (int j = 0; j < n; ++j) ring += f(th) * (2 * pi / n);
        return ring;
      },
      n);
  EXPECT_NEAR(oracle, 4 * pi + 1.0, 1e-8);

  const auto g = make_grid(GridKind::DH, BandLimit(8));
  SphereSignal s(g);
  for (int t = 0; t < g.n_theta; ++t)
    for (int p = 0; p < g.n_phi; ++p) s(t, p) = f(g.theta(t));
  EXPECT_NEAR(std::abs(dh_integrate(s) - oracle), 0.0, 1e-8);
}

TEST(Synthesis, AdjointDotProduct) {
  std::mt19937_64 rng(21);
  for (GridKind kind : {GridKind::DH, GridKind::MW})
    for (int L : {1, 3, 8}) {
      Synthesis op(make_grid(kind, BandLimit(L)));
      for (int rep = 0; rep < 5; ++rep) {
        const VectorXc a = random_complex(L * L, rng);
        const VectorXc x = random_complex(op.grid().n_samples, rng);
        const Complex lhs = op.apply(a).dot(x);  // <Psi a, x> with conj on first
        const Complex rhs = a.dot(op.adjoint(x));
        EXPECT_LT(std::abs(lhs - rhs), 1e-12 * std::max(1.0, std::abs(lhs)));
      }
    }
}
