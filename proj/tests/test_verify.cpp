#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "cavity/assembly.hpp"
#include "cavity/verify.hpp"

using namespace cavity;

namespace {

constexpr double kPi = std::numbers::pi;

const CheckReport &find(const std::vector<CheckReport> &v, const std::string &name) {
  for (const auto &r : v)
    if (r.name == name) return r;
  throw std::runtime_error("no check named " + name);
}

} // namespace

TEST(Quadrature, GaussLegendreIsExactForPolynomials) {
  const auto q = gauss_legendre(6, -1.0, 2.0);
  for (int p = 0; p <= 11; ++p) {
    double s = 0.0;
    for (std::size_t i = 0; i < q.nodes.size(); ++i) s += q.weights[i] * std::pow(q.nodes[i], p);
    const double want = (std::pow(2.0, p + 1) - std::pow(-1.0, p + 1)) / (p + 1);
    EXPECT_NEAR(s, want, 1e-12 * std::max(1.0, std::abs(want))) << "p=" << p;
  }
  EXPECT_THROW(gauss_legendre(0, 0.0, 1.0), DomainError);
}

TEST(Quadrature, DomainVolumes) {
  auto volume = [](const Domain &d) {
    double s = 0.0;
    for (const auto &p : d.quadrature(16)) s += p.w;
    return s;
  };
  EXPECT_NEAR(volume(ProductDomain(CrossSection(Rectangle{1.0, 2.0}), 3.0)), 6.0, 1e-12);
  EXPECT_NEAR(volume(ProductDomain(CrossSection(Disc{1.0}), 2.0)), 2 * kPi, 1e-12);
  EXPECT_NEAR(volume(ProductDomain(CrossSection(Annulus{0.5, 1.0}), 1.0)), 0.75 * kPi, 1e-12);
  EXPECT_NEAR(volume(BallDomain(2.0)), 4.0 / 3.0 * kPi * 8.0, 1e-10);
}

TEST(Sampling, BoundaryNormalsAreUnitAndOnBoundary) {
  const ProductDomain dom(CrossSection(Annulus{0.3, 1.0}), 2.0);
  const auto pts = dom.sample_boundary(8);
  ASSERT_FALSE(pts.empty());
  for (const auto &b : pts) {
    EXPECT_NEAR(norm(b.normal), 1.0, 1e-14);
    EXPECT_NEAR(dom.distance_to_boundary(b.x), 0.0, 1e-12);
    // stepping inward lands inside (edge points may sit a rounding error off the curve)
    const Vec3 in = b.x - 1e-6 * b.normal;
    if (b.wall == WallTag::Lateral && b.x.z > 0.0 && b.x.z < 2.0) EXPECT_TRUE(dom.contains(in));
    if (b.wall != WallTag::Lateral) EXPECT_TRUE(in.z > 0.0 && in.z < 2.0);
  }
}

TEST(Sampling, InteriorPointsAreSeededAndRespectMargin) {
  const BallDomain dom(1.0);
  const auto a = dom.sample_interior(50, 0.1, 7), b = dom.sample_interior(50, 0.1, 7);
  ASSERT_EQ(a.size(), 50u);
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].x, b[i].x);
    EXPECT_GT(dom.distance_to_boundary(a[i]), 0.1);
  }
  EXPECT_NE(dom.sample_interior(1, 0.1, 8)[0].x, a[0].x);
}

TEST(FiniteDifference, OperatorsOnKnownField) {
  // F = (sin y, sin z, sin x): div F = 0, curl F = (-cos z, -cos x, -cos y), curl curl F = F
  const FieldFunction f = [](Vec3 x) { return real_vec(std::sin(x.y), std::sin(x.z), std::sin(x.x)); };
  const Vec3 p{0.3, 0.7, 1.1};
  EXPECT_NEAR(std::abs(fd_div(f, p, 1e-4)), 0.0, 1e-9);
  const auto c = fd_curl(f, p, 1e-4);
  EXPECT_NEAR(c[0].real(), -std::cos(p.z), 1e-8);
  EXPECT_NEAR(c[1].real(), -std::cos(p.x), 1e-8);
  EXPECT_NEAR(c[2].real(), -std::cos(p.y), 1e-8);
  const auto cc = fd_curlcurl(f, p, 1e-3);
  const auto fv = f(p);
  for (int i = 0; i < 3; ++i) EXPECT_NEAR(cc[i].real(), fv[i].real(), 1e-6);
}

TEST(FiniteDifference, RefusesPointsNearBoundary) {
  const BallDomain dom(1.0);
  const FieldFunction f = [](Vec3) { return real_vec(1, 0, 0); };
  EXPECT_THROW(fd_operator(f, FdOp::Div, {0.0, 0.0, 0.9999}, 1e-3, &dom), DomainError);
  EXPECT_NO_THROW(fd_operator(f, FdOp::Div, {0.0, 0.0, 0.5}, 1e-3, &dom));
  EXPECT_THROW(fd_operator(f, FdOp::Div, {0.0, 0.0, 0.5}, 0.0, &dom), DomainError);
}

TEST(Convergence, RecoversKnownOrder) {
  std::vector<std::pair<double, double>> levels;
  for (double h : {0.1, 0.05, 0.025}) levels.push_back({h, 3.0 * h * h * (1 + h)});
  EXPECT_NEAR(convergence_order(levels).order, 2.0, 0.1);
  EXPECT_FALSE(convergence_order(levels).stagnant);
  EXPECT_THROW(convergence_order({{0.1, 1.0}, {0.05, 2.0}, {0.025, 3.0}}), DomainError);
  EXPECT_THROW(convergence_order({{0.1, 1.0}, {0.05, 0.5}}), DomainError);
}

TEST(Checks, AnalyticCubeModesPass) {
  const CrossSection cs(Rectangle{kPi, kPi});
  const auto modes = build_modes(cs, kPi, WallConfig{}, 6.0);
  const ProductDomain dom(cs, kPi);
  CheckConfig cfg;
  cfg.interior_points = 30;
  for (const auto &r : field_checks(modes, dom, WallConfig{}, cfg)) EXPECT_TRUE(r.passed) << r.name << " " << r.max_residual;
  EXPECT_TRUE(gram_check(modes, dom, cfg).passed);
}

TEST(Checks, DetectBrokenBoundaryCondition) {
  const CrossSection cs(Rectangle{kPi, kPi});
  auto modes = build_modes(cs, kPi, WallConfig{}, 2.5);
  ASSERT_FALSE(modes.empty());
  // add a tangential constant to E of the first mode
  const auto e = modes[0].E;
  modes[0].E = [e](Vec3 x) { return e(x) + real_vec(0.0, 0.0, 0.1); };
  CheckConfig cfg;
  cfg.interior_points = 10;
  const auto reports = field_checks(modes, ProductDomain(cs, kPi), WallConfig{}, cfg);
  const auto &b = find(reports, "boundary_E");
  EXPECT_FALSE(b.passed);
  ASSERT_FALSE(b.details.empty());
  EXPECT_EQ(b.details[0].mode, modes[0].label());
  EXPECT_TRUE(find(reports, "div_E").passed);
}

TEST(Checks, GramDetectsNonOrthogonalPair) {
  const CrossSection cs(Disc{1.0});
  auto modes = build_modes(cs, 1.0, WallConfig{}, 20.0);
  ASSERT_GE(modes.size(), 2u);
  modes[1] = modes[0];
  modes[1].indices += "/copy";
  EXPECT_FALSE(gram_check(modes, ProductDomain(cs, 1.0)).passed);
}

TEST(Checks, MultiplicityFlagsLooseMerging) {
  const auto modes = build_modes(CrossSection(Rectangle{1.0, 1.01}), 1.0, WallConfig{}, 40.0);
  EXPECT_TRUE(multiplicity_check(make_spectrum_table(modes, 1e-9)).passed);
  EXPECT_FALSE(multiplicity_check(make_spectrum_table(modes, 0.05)).passed);
}

TEST(Checks, OffendersKeepTheWorstFive) {
  CheckReport r;
  for (int i = 0; i < 9; ++i) record_offender(r, {"m" + std::to_string(i), {}, static_cast<double>(i % 4)});
  ASSERT_EQ(r.details.size(), 5u);
  EXPECT_EQ(r.max_residual, 3.0);
  EXPECT_EQ(r.details[0].value, 3.0);
  EXPECT_EQ(r.details[4].value, 1.0);
}

TEST(ScalarCount, SmallCube) {
  // Lambda <= 2: (1,1,0) x3 once each; Lambda <= 3 adds (1,1,1) twice
  EXPECT_EQ(cuboid_scalar_count(kPi, kPi, kPi, 2.0), 3u);
  EXPECT_EQ(cuboid_scalar_count(kPi, kPi, kPi, 3.0), 5u);
  EXPECT_EQ(cuboid_scalar_count(kPi, kPi, kPi, 1.9), 0u);
}
