#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "cavity/rootfind.hpp"
#include "cavity/specfun.hpp"

using namespace cavity;

// Zeros computed once at 30 digits and frozen.
TEST(BesselZeros, FirstThreeOfJ) {
  const double want[3][3] = {{2.40482555769577276862, 5.52007811028631064960, 8.65372791291101221695},
                             {3.83170597020751231561, 7.01558666981561875354, 10.1734681350627220772},
                             {5.13562230184068255630, 8.41724414039986485778, 11.6198411721490594271}};
  for (int n = 0; n <= 2; ++n) {
    const auto z = j_zeros(n, 3).zeros;
    ASSERT_EQ(z.size(), 3u);
    for (int j = 0; j < 3; ++j) EXPECT_NEAR(z[j], want[n][j], 1e-12);
  }
}

TEST(BesselZeros, FirstThreeOfJPrimeSkippingOrigin) {
  const double want[3][3] = {{3.83170597020751231561, 7.01558666981561875354, 10.1734681350627220772},
                             {1.84118378134065930264, 5.33144277352503263688, 8.53631636634628583436},
                             {3.05423692822714032276, 6.70613319415845914663, 9.96946782308759579318}};
  for (int n = 0; n <= 2; ++n) {
    const auto z = j_prime_zeros(n, 3).zeros;
    for (int j = 0; j < 3; ++j) EXPECT_NEAR(z[j], want[n][j], 1e-12);
  }
}

TEST(BesselZeros, DerivativeZerosOfJ0AreZerosOfJ1) {
  const auto a = j_prime_zeros(0, 10).zeros, b = j_zeros(1, 10).zeros;
  for (int j = 0; j < 10; ++j) EXPECT_NEAR(a[j], b[j], 1e-12);
}

TEST(BesselZeros, InterlacingAndSignChange) {
  const auto z0 = j_zeros(4, 12).zeros, z1 = j_zeros(5, 12).zeros;
  for (int j = 0; j + 1 < 12; ++j) {
    EXPECT_LT(z0[j], z1[j]);
    EXPECT_LT(z1[j], z0[j + 1]);
    EXPECT_LT(bessel_j(4, z0[j] - 1e-7) * bessel_j(4, z0[j] + 1e-7), 0.0);
  }
}

TEST(BesselZeros, BelowLimitMatchesCounted) {
  const auto all = j_zeros_below(3, 30.0);
  const auto first = j_zeros(3, all.size()).zeros;
  ASSERT_FALSE(all.empty());
  EXPECT_LE(all.back(), 30.0);
  for (std::size_t i = 0; i < all.size(); ++i) EXPECT_DOUBLE_EQ(all[i], first[i]);
  EXPECT_GT(j_zeros(3, all.size() + 1).zeros.back(), 30.0);
}

TEST(BesselZeros, RejectsEmptyRequest) {
  EXPECT_THROW(j_zeros(0, 0), DomainError);
  EXPECT_THROW(j_zeros(-1, 3), DomainError);
}

TEST(AnnulusZeros, FrozenCrossProductZeros) {
  const auto d0 = annulus_zeros(BoundaryKind::Dirichlet, 0, 0.5, 1.0, 2).zeros;
  EXPECT_NEAR(d0[0], 6.24606183919138441016, 1e-11);
  EXPECT_NEAR(d0[1], 12.5468714279843613064, 1e-11);
  EXPECT_NEAR(annulus_zeros(BoundaryKind::Dirichlet, 1, 0.5, 1.0, 1).zeros[0], 6.39315676162127001079, 1e-11);
  EXPECT_NEAR(annulus_zeros(BoundaryKind::Neumann, 1, 0.5, 1.0, 1).zeros[0], 1.35467201027316795968, 1e-11);
  EXPECT_NEAR(annulus_zeros(BoundaryKind::Dirichlet, 0, 0.25, 1.0, 1).zeros[0], 4.09768553927684413666, 1e-11);
}

TEST(AnnulusZeros, NeumannOrderZeroEqualsDirichletOrderOne) {
  // J0' = -J1 and Y0' = -Y1
  const auto a = annulus_zeros(BoundaryKind::Neumann, 0, 0.5, 1.0, 4).zeros;
  const auto b = annulus_zeros(BoundaryKind::Dirichlet, 1, 0.5, 1.0, 4).zeros;
  for (int j = 0; j < 4; ++j) EXPECT_NEAR(a[j], b[j], 1e-11);
}

TEST(AnnulusZeros, ThinAnnulusApproachesIntervalSpectrum) {
  const double r0 = 0.95, R = 1.0;
  const double k1 = annulus_zeros(BoundaryKind::Dirichlet, 0, r0, R, 1).zeros[0];
  EXPECT_NEAR(k1, std::numbers::pi / (R - r0), 0.05);
}

TEST(AnnulusZeros, BelowLimitMatchesCounted) {
  const auto all = annulus_zeros_below(BoundaryKind::Neumann, 2, 0.3, 1.0, 25.0);
  const auto first = annulus_zeros(BoundaryKind::Neumann, 2, 0.3, 1.0, all.size()).zeros;
  for (std::size_t i = 0; i < all.size(); ++i) EXPECT_NEAR(all[i], first[i], 1e-13);
}

TEST(AnnulusZeros, RejectsBadRadii) {
  EXPECT_THROW(annulus_zeros(BoundaryKind::Dirichlet, 0, 1.0, 0.5, 1), DomainError);
  EXPECT_THROW(annulus_zeros(BoundaryKind::Dirichlet, 0, 0.0, 1.0, 1), DomainError);
}

TEST(RiccatiZeros, FrozenValues) {
  EXPECT_NEAR(riccati_zeros(BoundaryKind::Neumann, 1, 1.0, 2).zeros[0], 2.74370726999226938256, 1e-12);
  EXPECT_NEAR(riccati_zeros(BoundaryKind::Neumann, 1, 1.0, 2).zeros[1], 6.11676426446176893364, 1e-12);
  EXPECT_NEAR(riccati_zeros(BoundaryKind::Neumann, 2, 1.0, 1).zeros[0], 3.87023858022216501202, 1e-12);
  EXPECT_NEAR(riccati_zeros(BoundaryKind::Neumann, 3, 1.0, 1).zeros[0], 4.97342035082284202462, 1e-12);
  EXPECT_NEAR(riccati_zeros(BoundaryKind::Dirichlet, 1, 1.0, 2).zeros[0], 4.49340945790906417531, 1e-12);
  EXPECT_NEAR(riccati_zeros(BoundaryKind::Dirichlet, 1, 1.0, 2).zeros[1], 7.72525183693770716420, 1e-12);
  EXPECT_NEAR(riccati_zeros(BoundaryKind::Dirichlet, 2, 1.0, 1).zeros[0], 5.76345919689454979141, 1e-12);
}

TEST(RiccatiZeros, OrderZeroDirichletIsMultipleOfPi) {
  const double R = 1.7;
  const auto z = riccati_zeros(BoundaryKind::Dirichlet, 0, R, 6).zeros;
  for (int p = 0; p < 6; ++p) EXPECT_NEAR(z[p] * R, (p + 1) * std::numbers::pi, 1e-12);
}

TEST(RiccatiZeros, ScaleWithRadius) {
  const double a = riccati_zeros(BoundaryKind::Neumann, 2, 1.0, 1).zeros[0];
  const double b = riccati_zeros(BoundaryKind::Neumann, 2, 2.5, 1).zeros[0];
  EXPECT_NEAR(b * 2.5, a, 1e-12);
}
