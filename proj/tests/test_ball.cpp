#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "cavity/ball.hpp"
#include "cavity/verify.hpp"

using namespace cavity;

TEST(Ball, LowestEigenfrequencyIsTriple) {
  for (double R : {1.0, 0.5, 3.0}) {
    const auto modes = ball_spectrum(R, 3.0 / R);
    ASSERT_EQ(modes.size(), 3u);
    for (const auto &m : modes) {
      EXPECT_NEAR(m.k * R, 2.74370726999226938256, 1e-12);
      EXPECT_EQ(m.family, BallFamily::NeumannFamily);
      EXPECT_EQ(m.n, 1);
    }
  }
}

TEST(Ball, MultiplicityIsTwoNPlusOne) {
  const auto modes = ball_spectrum(1.0, 5.0);
  // NEU n=1 (3), NEU n=2 (5), DIR n=1 (3), NEU n=3 (7)
  ASSERT_EQ(modes.size(), 18u);
  EXPECT_NEAR(modes[3].k, 3.87023858022216501202, 1e-12);
  EXPECT_NEAR(modes[8].k, 4.49340945790906417531, 1e-12);
  EXPECT_EQ(modes[8].family, BallFamily::DirichletFamily);
  EXPECT_NEAR(modes[11].k, 4.97342035082284202462, 1e-12);
}

TEST(Ball, OrderZeroRiccatiZerosAreMultiplesOfPi) {
  for (int p = 1; p <= 8; ++p)
    EXPECT_NEAR(riccati_zeros(BoundaryKind::Dirichlet, 0, 1.0, 8).zeros[p - 1], p * std::numbers::pi, 1e-12);
}

TEST(Ball, FieldChecksPassForLowModes) {
  const double R = 1.0;
  const auto modes = build_ball_modes(R, 5.0);
  const BallDomain dom(R);
  CheckConfig cfg;
  cfg.interior_points = 40;
  cfg.boundary_per_face = 40;
  for (const auto &r : field_checks(modes, dom, WallConfig{}, cfg))
    EXPECT_TRUE(r.passed) << r.name << " " << r.max_residual;
  const auto g = gram_check(modes, dom, cfg);
  EXPECT_TRUE(g.passed) << g.max_residual;
}

TEST(Ball, RealBasisIsAlsoOrthogonal) {
  const auto modes = build_ball_modes(1.0, 4.0, HarmonicBasis::Real);
  for (const auto &m : modes) {
    const auto e = m.E({0.1, 0.2, 0.3});
    for (int i = 0; i < 3; ++i) EXPECT_TRUE(std::isfinite(std::abs(e[i])));
  }
  EXPECT_TRUE(gram_check(modes, BallDomain(1.0)).passed);
}

TEST(Ball, FieldsRegularAtCentreAndPoles) {
  for (const auto &m : build_ball_modes(1.0, 5.0)) {
    for (Vec3 x : {Vec3{0, 0, 0}, Vec3{0, 0, 0.5}, Vec3{0, 0, -0.9}}) {
      const auto e = m.E(x), h = m.H(x);
      for (int i = 0; i < 3; ++i) {
        EXPECT_TRUE(std::isfinite(std::abs(e[i]))) << m.label();
        EXPECT_TRUE(std::isfinite(std::abs(h[i]))) << m.label();
      }
    }
  }
}

TEST(Ball, ModeSpecLabelsAndInside) {
  const auto modes = build_ball_modes(2.0, 1.5);
  ASSERT_EQ(modes.size(), 3u);
  EXPECT_EQ(modes[0].family, "NEU");
  EXPECT_EQ(modes[0].polarization, Polarization::TM);
  EXPECT_TRUE(modes[0].inside({1.0, 1.0, 1.0}));
  EXPECT_FALSE(modes[0].inside({2.0, 1.0, 0.0}));
}

TEST(Ball, RejectsBadInput) {
  EXPECT_THROW(ball_spectrum(0.0, 1.0), DomainError);
  EXPECT_THROW(ball_spectrum(1.0, -1.0), DomainError);
}
