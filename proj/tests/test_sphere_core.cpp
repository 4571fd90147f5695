#include "sphsamp/sphere_core.hpp"

#include <gtest/gtest.h>

#include <numbers>
#include <set>

using namespace sphsamp;
using std::numbers::pi;

TEST(FlatIndex, Examples) {
  EXPECT_EQ(flat_index(0, 0), 0);
  EXPECT_EQ(flat_index(1, -1), 1);
  EXPECT_EQ(flat_index(2, 2), 8);
  EXPECT_THROW(flat_index(1, 2), std::domain_error);
  EXPECT_THROW(flat_index(2, -3), std::domain_error);
}

TEST(FlatIndex, BijectiveUpTo64) {
  const int L = 64;
  std::vector<int> hits(L * L, 0);
  for (int l = 0; l < L; ++l)
    for (int m = -l; m <= l; ++m) {
      const int i = flat_index(l, m);
      ASSERT_GE(i, 0);
      ASSERT_LT(i, L * L);
      ++hits[i];
      int l2, m2;
      degree_order(i, l2, m2);
      EXPECT_EQ(l2, l);
      EXPECT_EQ(m2, m);
    }
  for (int h : hits) EXPECT_EQ(h, 1);
}

TEST(Nodes, Examples) {
  EXPECT_DOUBLE_EQ(theta_node(make_grid(GridKind::DH, BandLimit(2)), 1), pi / 4);
  EXPECT_DOUBLE_EQ(theta_node(make_grid(GridKind::MW, BandLimit(2)), 1), pi);
  EXPECT_DOUBLE_EQ(theta_node(make_grid(GridKind::MW, BandLimit(1)), 0), pi);
  EXPECT_DOUBLE_EQ(phi_node(make_grid(GridKind::DH, BandLimit(2)), 3), 3 * pi / 2);
  EXPECT_DOUBLE_EQ(phi_node(make_grid(GridKind::MW, BandLimit(2)), 0), 0.0);
  EXPECT_DOUBLE_EQ(phi_node(make_grid(GridKind::MW, BandLimit(3)), 4), 8 * pi / 5);
}

TEST(Nodes, OutOfRangeThrows) {
  const auto g = make_grid(GridKind::MW, BandLimit(3));
  EXPECT_THROW(theta_node(g, 3), std::domain_error);
  EXPECT_THROW(theta_node(g, -1), std::domain_error);
  EXPECT_THROW(phi_node(g, 5), std::domain_error);
  EXPECT_THROW(BandLimit(0), std::domain_error);
}

TEST(Nodes, StrictlyIncreasing) {
  for (GridKind kind : {GridKind::DH, GridKind::MW})
    for (int L = 1; L <= 40; ++L) {
      const auto g = make_grid(kind, BandLimit(L));
      for (int t = 1; t < g.n_theta; ++t) EXPECT_LT(g.theta(t - 1), g.theta(t));
      for (int p = 1; p < g.n_phi; ++p) EXPECT_LT(g.phi(p - 1), g.phi(p));
    }
}

TEST(SampleCount, Examples) {
  EXPECT_EQ(sample_count(GridKind::DH, BandLimit(32)), 4033);
  EXPECT_EQ(sample_count(GridKind::MW, BandLimit(32)), 1954);
  EXPECT_EQ(sample_count(GridKind::MW, BandLimit(1)), 1);
}

TEST(SampleCount, MwSmallerAndRatioTendsToHalf) {
  double last_ratio = 0.0;
  for (int L = 1; L <= 2048; L *= 2) {
    const int dh = sample_count(GridKind::DH, BandLimit(L));
    const int mw = sample_count(GridKind::MW, BandLimit(L));
    EXPECT_LT(mw, dh);
    last_ratio = double(mw) / dh;
  }
  EXPECT_NEAR(last_ratio, 0.5, 1e-3);
}

TEST(GridDescriptor, Shapes) {
  const auto dh = make_grid(GridKind::DH, BandLimit(5));
  EXPECT_EQ(dh.n_theta, 10);
  EXPECT_EQ(dh.n_phi, 10);
  EXPECT_EQ(dh.n_samples, 9 * 10 + 1);
  const auto mw = make_grid(GridKind::MW, BandLimit(5));
  EXPECT_EQ(mw.n_theta, 5);
  EXPECT_EQ(mw.n_phi, 9);
  EXPECT_EQ(mw.n_samples, 4 * 9 + 1);
}

TEST(GridDescriptor, StoredIndexCoversEverySlotOnce) {
  for (GridKind kind : {GridKind::DH, GridKind::MW})
    for (int L : {1, 2, 3, 8}) {
      const auto g = make_grid(kind, BandLimit(L));
      std::set<int> seen;
      for (int t = 0; t < g.n_theta; ++t)
        for (int p = 0; p < g.n_phi; ++p) seen.insert(g.stored_index(t, p));
      EXPECT_EQ(static_cast<int>(seen.size()), g.n_samples);
      EXPECT_EQ(*seen.rbegin(), g.n_samples - 1);
      for (int p = 0; p < g.n_phi; ++p) EXPECT_EQ(g.stored_index(g.pole_row(), p), g.stored_index(g.pole_row(), 0));
    }
}

TEST(GridDescriptor, ExpandAdjoint) {
  const auto g = make_grid(GridKind::MW, BandLimit(6));
  Eigen::VectorXd x = Eigen::VectorXd::LinSpaced(g.n_samples, -1.0, 2.0);
  GridArray<double> y = GridArray<double>::Random(g.n_theta, g.n_phi);
  const double lhs = (expand(g, x).array() * y.array()).sum();
  const double rhs = x.dot(expand_adjoint(g, y));
  EXPECT_NEAR(lhs, rhs, 1e-12 * std::abs(lhs));
  EXPECT_TRUE(contract(g, expand(g, x)).isApprox(x));
}

TEST(Containers, LengthContracts) {
  const auto g = make_grid(GridKind::DH, BandLimit(3));
  EXPECT_THROW(SphereSignal(g, VectorXc::Zero(5)), ContractError);
  EXPECT_THROW(HarmonicCoeffs(BandLimit(3), VectorXc::Zero(8)), ContractError);
  HarmonicCoeffs c{BandLimit(3)};
  c(2, -1) = 4.0;
  EXPECT_EQ(c.values()(flat_index(2, -1)), Complex(4.0));
  EXPECT_EQ(parse_grid_kind("MW"), GridKind::MW);
  EXPECT_THROW(parse_grid_kind("gl"), std::invalid_argument);
}
