#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "cavity/axial.hpp"
#include "cavity/verify.hpp"

using namespace cavity;

TEST(Axial, DirichletAndNeumannOnPi) {
  const auto d = axial_spectrum(AxialBC::Dirichlet, std::numbers::pi, 4);
  const auto n = axial_spectrum(AxialBC::Neumann, std::numbers::pi, 4);
  for (int m = 0; m < 4; ++m) {
    EXPECT_EQ(d[m].m, m + 1);
    EXPECT_EQ(d[m].mu, (m + 1.0) * (m + 1.0));
    EXPECT_EQ(n[m].m, m);
    EXPECT_EQ(n[m].mu, static_cast<double>(m * m));
  }
}

TEST(Axial, MixedConditionsUseHalfIntegers) {
  const double l = 2.0;
  const auto e = axial_eigenpair(AxialBC::MixedDirNeu, l, 1);
  EXPECT_NEAR(e.mu, std::pow(std::numbers::pi / (2 * l), 2), 1e-15);
  EXPECT_NEAR(e.g(0.0), 0.0, 1e-15);
  EXPECT_NEAR(e.g_prime(l), 0.0, 1e-15);
  const auto f = axial_eigenpair(AxialBC::MixedNeuDir, l, 2);
  EXPECT_NEAR(f.g_prime(0.0), 0.0, 1e-15);
  EXPECT_NEAR(f.g(l), 0.0, 1e-15);
}

TEST(Axial, NormalizedInL2) {
  const double l = 1.3;
  const auto q = gauss_legendre(40, 0.0, l);
  for (auto bc : {AxialBC::Dirichlet, AxialBC::Neumann, AxialBC::MixedDirNeu, AxialBC::MixedNeuDir}) {
    for (const auto &e : axial_spectrum(bc, l, 4)) {
      double s = 0.0, g2 = 0.0;
      for (std::size_t i = 0; i < q.nodes.size(); ++i) {
        s += q.weights[i] * e.w(q.nodes[i]) * e.w(q.nodes[i]);
        g2 += q.weights[i] * e.g(q.nodes[i]) * e.g(q.nodes[i]);
      }
      EXPECT_NEAR(s, 1.0, 1e-13) << to_string(bc) << " m=" << e.m;
      EXPECT_NEAR(g2, e.g_norm_sq(), 1e-13);
    }
  }
}

TEST(Axial, SecondDerivativeIsEigenrelation) {
  const auto e = axial_eigenpair(AxialBC::Neumann, 2.0, 3);
  const double x = 0.77, h = 1e-4;
  const double fd = (e.g(x + h) - 2 * e.g(x) + e.g(x - h)) / (h * h);
  EXPECT_NEAR(fd, e.g_second(x), 1e-6);
  EXPECT_NEAR(e.g_second(x), -e.mu * e.g(x), 1e-14);
}

TEST(Axial, BelowBoundIsInclusive) {
  const auto v = axial_spectrum_below(AxialBC::Dirichlet, std::numbers::pi, 9.0);
  ASSERT_EQ(v.size(), 3u);
  EXPECT_EQ(v.back().mu, 9.0);
}

TEST(Axial, RejectsBadInput) {
  EXPECT_THROW(axial_eigenpair(AxialBC::Dirichlet, 1.0, 0), IndexError);
  EXPECT_THROW(axial_eigenpair(AxialBC::Neumann, -1.0, 0), DomainError);
  EXPECT_THROW(axial_spectrum(AxialBC::Neumann, 1.0, 0), DomainError);
}
