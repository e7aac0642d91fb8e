#include <cmath>
#include <numbers>
#include <sstream>

#include <gtest/gtest.h>

#include "cavity/transverse.hpp"
#include "cavity/verify.hpp"

using namespace cavity;

namespace {

constexpr double kPi = std::numbers::pi;

// Integral of v^2 over the section by the verify module's product quadrature.
double mean_square(const CrossSection &cs, const TransverseEigenpair &e) {
  ProductDomain dom(cs, 1.0);
  double s = 0.0;
  for (const auto &[p, w] : dom.section_quadrature(24)) {
    const double v = e.evaluate(p).v;
    s += w * v * v;
  }
  return s;
}

} // namespace

TEST(Rectangle, DirichletEigenvaluesAreSumsOfSquares) {
  const CrossSection cs(Rectangle{kPi, kPi});
  const auto e = transverse_spectrum(cs, BoundaryKind::Dirichlet, 6);
  const double want[] = {2, 5, 5, 8, 10, 10};
  for (int i = 0; i < 6; ++i) EXPECT_NEAR(e[i].lambda, want[i], 1e-12);
}

TEST(Rectangle, NeumannIncludesConstant) {
  const CrossSection cs(Rectangle{2.0, 1.0});
  const auto e = transverse_spectrum(cs, BoundaryKind::Neumann, 4);
  EXPECT_EQ(e[0].lambda, 0.0);
  EXPECT_NEAR(e[1].lambda, std::pow(kPi / 2, 2), 1e-13);
  EXPECT_NEAR(e[2].lambda, kPi * kPi, 1e-13);
  EXPECT_NEAR(e[0].evaluate({0.3, 0.4}).v, 1.0 / std::sqrt(2.0), 1e-14);
}

TEST(Rectangle, EigenfunctionsSolveHelmholtzAndAreNormalized) {
  const CrossSection cs(Rectangle{1.5, 1.0});
  for (auto bc : {BoundaryKind::Dirichlet, BoundaryKind::Neumann}) {
    for (const auto &e : transverse_spectrum(cs, bc, 8)) {
      const auto v = e.evaluate({0.37, 0.61});
      EXPECT_NEAR(v.lap, -e.lambda * v.v, 1e-12);
      EXPECT_NEAR(mean_square(cs, e), 1.0, 1e-12) << e.index.label();
      if (bc == BoundaryKind::Dirichlet) EXPECT_NEAR(e.evaluate({0.0, 0.42}).v, 0.0, 1e-14);
      else EXPECT_NEAR(e.evaluate({0.42, 1.0}).dy, 0.0, 1e-12);
    }
  }
}

TEST(Disc, DirichletEigenvaluesAreSquaredBesselZeros) {
  const CrossSection cs(Disc{1.0});
  const auto e = transverse_spectrum(cs, BoundaryKind::Dirichlet, 6);
  EXPECT_NEAR(e[0].lambda, std::pow(2.40482555769577276862, 2), 1e-11);
  EXPECT_NEAR(e[1].lambda, std::pow(3.83170597020751231561, 2), 1e-11);
  EXPECT_NEAR(e[2].lambda, e[1].lambda, 1e-14); // cos and sin partners
  EXPECT_NE(e[1].index.parity, e[2].index.parity);
}

TEST(Disc, RadiusScaling) {
  const auto a = transverse_spectrum(CrossSection(Disc{1.0}), BoundaryKind::Neumann, 5);
  const auto b = transverse_spectrum(CrossSection(Disc{2.0}), BoundaryKind::Neumann, 5);
  for (int i = 1; i < 5; ++i) EXPECT_NEAR(b[i].lambda * 4.0, a[i].lambda, 1e-11);
}

TEST(Disc, EigenfunctionsNormalizedAndRegularAtCentre) {
  const CrossSection cs(Disc{1.3});
  for (auto bc : {BoundaryKind::Dirichlet, BoundaryKind::Neumann}) {
    for (const auto &e : transverse_spectrum(cs, bc, 10)) {
      EXPECT_NEAR(mean_square(cs, e), 1.0, 1e-10) << e.index.label();
      const auto c = e.evaluate({0.0, 0.0});
      EXPECT_TRUE(std::isfinite(c.v) && std::isfinite(c.dx) && std::isfinite(c.dy));
      const auto v = e.evaluate({0.4, -0.5});
      EXPECT_NEAR(v.lap, -e.lambda * v.v, 1e-10);
    }
  }
}

TEST(Annulus, EigenvaluesFromCrossProductZeros) {
  const CrossSection cs(Annulus{0.5, 1.0});
  const auto d = transverse_spectrum(cs, BoundaryKind::Dirichlet, 1);
  EXPECT_NEAR(d[0].lambda, std::pow(6.24606183919138441016, 2), 1e-9);
  const auto n = transverse_spectrum(cs, BoundaryKind::Neumann, 3);
  EXPECT_EQ(n[0].lambda, 0.0);
  EXPECT_NEAR(n[1].lambda, std::pow(1.35467201027316795968, 2), 1e-10);
  EXPECT_NEAR(n[2].lambda, n[1].lambda, 1e-14);
}

TEST(Annulus, EigenfunctionsNormalizedAndSatisfyBoundaryConditions) {
  const CrossSection cs(Annulus{0.3, 1.0});
  for (const auto &e : transverse_spectrum(cs, BoundaryKind::Dirichlet, 8)) {
    EXPECT_NEAR(mean_square(cs, e), 1.0, 1e-10) << e.index.label();
    EXPECT_NEAR(e.evaluate({0.3 * std::cos(0.7), 0.3 * std::sin(0.7)}).v, 0.0, 1e-10);
    EXPECT_NEAR(e.evaluate({std::cos(2.1), std::sin(2.1)}).v, 0.0, 1e-10);
  }
  for (const auto &e : transverse_spectrum(cs, BoundaryKind::Neumann, 8)) {
    EXPECT_NEAR(mean_square(cs, e), 1.0, 1e-10) << e.index.label();
    const double t = 1.2;
    const auto v = e.evaluate({0.3 * std::cos(t), 0.3 * std::sin(t)});
    EXPECT_NEAR(v.dx * std::cos(t) + v.dy * std::sin(t), 0.0, 1e-9);
  }
}

TEST(Topology, SimplyConnectedSectionsHaveNoPotentials) {
  EXPECT_TRUE(topological_potentials(CrossSection(Disc{1.0})).empty());
  EXPECT_TRUE(topological_potentials(CrossSection(Rectangle{1.0, 2.0})).empty());
}

TEST(Topology, AnnulusPotentialIsLogR) {
  const CrossSection cs(Annulus{0.25, 1.0});
  const auto top = topological_potentials(cs);
  ASSERT_EQ(top.size(), 1u);
  const auto v = top[0].evaluate({0.3, 0.4});
  EXPECT_NEAR(v.v, std::log(0.5), 1e-15);
  EXPECT_NEAR(v.dx, 0.3 / 0.25, 1e-14);
  EXPECT_NEAR(top[0].gradient_norm_sq, 2 * kPi * std::log(4.0), 1e-13);
}

TEST(Grid, MaskParsingAndComponents) {
  std::istringstream in("5 4 0.5\n#....\n.....\n..1..\n.....\n");
  const auto m = GridMask::parse(in);
  EXPECT_EQ(m.nx(), 5);
  EXPECT_EQ(m.ny(), 4);
  EXPECT_EQ(m.unknowns(), 18);
  EXPECT_EQ(m.D(), 2);
  EXPECT_FALSE(m.interior(0, 3));
  std::istringstream touching("3 1 0.5\n1..\n");
  EXPECT_THROW(GridMask::parse(touching), FormatError);
  std::istringstream bad("2 1 0.5\n.x\n");
  EXPECT_THROW(GridMask::parse(bad), FormatError);
  std::istringstream short_rows("2 2 0.5\n..\n");
  EXPECT_THROW(GridMask::parse(short_rows), FormatError);
}

TEST(Grid, RectangleMaskApproachesAnalytic) {
  const CrossSection cs(GridMask::rectangle(1.0, 1.0, 1.0 / 32));
  const auto e = transverse_spectrum(cs, BoundaryKind::Dirichlet, 3);
  EXPECT_NEAR(e[0].lambda, 2 * kPi * kPi, 0.01 * 2 * kPi * kPi);
  EXPECT_NEAR(e[1].lambda, e[2].lambda, 1e-8 * e[1].lambda);
  const auto n = transverse_spectrum(cs, BoundaryKind::Neumann, 2);
  EXPECT_NEAR(n[0].lambda, 0.0, 1e-9);
  EXPECT_NEAR(n[1].lambda, kPi * kPi, 0.01 * kPi * kPi);
}

TEST(Grid, SecondOrderConvergenceOnSquare) {
  std::vector<std::pair<double, double>> levels;
  for (int n : {8, 16, 32}) {
    const double h = 1.0 / n;
    const auto e = transverse_spectrum(CrossSection(GridMask::rectangle(1.0, 1.0, h)), BoundaryKind::Dirichlet, 1);
    levels.push_back({h, std::abs(e[0].lambda - 2 * kPi * kPi)});
  }
  EXPECT_NEAR(convergence_order(levels).order, 2.0, 0.2);
}

TEST(Grid, HolePotentialHasUnitTraceOnHole) {
  const CrossSection cs(GridMask::rectangle_with_hole(2.0, 2.0, 0.75, 1.25, 0.75, 1.25, 0.125));
  ASSERT_EQ(cs.D(), 2);
  const auto top = topological_potentials(cs);
  ASSERT_EQ(top.size(), 1u);
  EXPECT_NEAR(top[0].evaluate({0.74, 1.0}).v, 1.0, 0.05);
  EXPECT_NEAR(top[0].evaluate({0.01, 1.0}).v, 0.0, 0.05);
  EXPECT_GT(top[0].gradient_norm_sq, 0.0);
}

TEST(Grid, BelowBoundMatchesCount) {
  const CrossSection cs(GridMask::disc(1.0, 1.0 / 16));
  const auto below = transverse_spectrum_below(cs, BoundaryKind::Dirichlet, 30.0);
  ASSERT_FALSE(below.empty());
  EXPECT_LE(below.back().lambda, 30.0);
  const auto more = transverse_spectrum(cs, BoundaryKind::Dirichlet, static_cast<int>(below.size()) + 1);
  EXPECT_GT(more.back().lambda, 30.0);
}

TEST(CrossSectionInput, RejectsDegenerateShapes) {
  EXPECT_THROW(CrossSection(Rectangle{0.0, 1.0}), DomainError);
  EXPECT_THROW(CrossSection(Disc{-1.0}), DomainError);
  EXPECT_THROW(CrossSection(Annulus{1.0, 1.0}), DomainError);
  EXPECT_THROW(transverse_spectrum(CrossSection(Disc{1.0}), BoundaryKind::Dirichlet, 0), DomainError);
}
