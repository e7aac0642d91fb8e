#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "cavity/assembly.hpp"
#include "cavity/verify.hpp"

using namespace cavity;

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<std::pair<double, int>> distinct(const SpectrumTable &t, std::size_t count) {
  std::vector<std::pair<double, int>> out;
  for (std::size_t i = 0; i < std::min(count, t.entries.size()); ++i)
    out.push_back({t.entries[i].Lambda, t.entries[i].multiplicity});
  return out;
}

int count_family(const std::vector<ModeSpec> &modes, const std::string &family) {
  return static_cast<int>(std::count_if(modes.begin(), modes.end(), [&](const ModeSpec &m) { return m.family == family; }));
}

} // namespace

TEST(Walls, ParseNamesAndRejectUnknown) {
  EXPECT_EQ(WallConfig::parse("cond").name(), "cond");
  EXPECT_EQ(WallConfig::parse("ins-ends").ends, EndWalls::Insulating);
  EXPECT_EQ(WallConfig::parse("mixed-ends").ends, EndWalls::MixedCondIns);
  EXPECT_THROW(WallConfig::parse("open"), DomainError);
}

TEST(Walls, AxialConditionsSwapWithEndWalls) {
  const auto c = axial_choice(WallConfig{});
  EXPECT_EQ(c.te, AxialBC::Dirichlet);
  EXPECT_EQ(c.tm, AxialBC::Neumann);
  const auto i = axial_choice(WallConfig::parse("ins-ends"));
  EXPECT_EQ(i.te, AxialBC::Neumann);
  EXPECT_EQ(i.tm, AxialBC::Dirichlet);
  EXPECT_THROW(axial_choice(WallConfig{LateralWall::Insulating, EndWalls::Conducting}), DomainError);
}

TEST(Cube, FirstDistinctEigenvalues) {
  const auto t = spectrum_table(CrossSection(Rectangle{kPi, kPi}), kPi, WallConfig{}, 26.0, 1e-9);
  const std::vector<std::pair<double, int>> want = {{2, 3}, {3, 2}, {5, 6}, {6, 6}, {8, 3}};
  const auto got = distinct(t, 5);
  ASSERT_EQ(got.size(), 5u);
  for (int i = 0; i < 5; ++i) {
    EXPECT_EQ(got[i].first, want[i].first);
    EXPECT_EQ(got[i].second, want[i].second);
  }
  EXPECT_EQ(t.entries.back().Lambda, 26.0);
  EXPECT_EQ(t.entries.back().multiplicity, 18);
}

TEST(Cube, CountMatchesScalarEnumeration) {
  for (double lmax : {5.0, 12.0, 20.0, 33.0}) {
    const auto modes = build_modes(CrossSection(Rectangle{kPi, kPi}), kPi, WallConfig{}, lmax);
    EXPECT_EQ(modes.size(), cuboid_scalar_count(kPi, kPi, kPi, lmax)) << "lmax=" << lmax;
  }
}

TEST(Cuboid, CountMatchesScalarEnumerationForUnequalSides) {
  const auto modes = build_modes(CrossSection(Rectangle{1.0, 1.7}), 2.3, WallConfig{}, 60.0);
  EXPECT_EQ(modes.size(), cuboid_scalar_count(1.0, 1.7, 2.3, 60.0));
}

TEST(Cylinder, LowestIsTeWithDerivativeZero) {
  const auto modes = build_modes(CrossSection(Disc{1.0}), kPi, WallConfig{}, 5.0);
  ASSERT_FALSE(modes.empty());
  const double z = 1.84118378134065930264;
  EXPECT_NEAR(modes[0].Lambda, z * z + 1.0, 1e-12);
  EXPECT_EQ(modes[0].family, "TE");
  EXPECT_EQ(count_family(modes, "TEM"), 0);
  EXPECT_EQ(count_family(modes, "MS"), 0);
}

TEST(Coax, TemFamilyIsAxialSpectrum) {
  const auto modes = build_modes(CrossSection(Annulus{0.5, 1.0}), kPi, WallConfig{}, 25.5);
  std::vector<double> tem;
  for (const auto &m : modes)
    if (m.family == "TEM") tem.push_back(m.Lambda);
  ASSERT_EQ(tem.size(), 5u);
  for (int i = 0; i < 5; ++i) EXPECT_EQ(tem[i], (i + 1.0) * (i + 1.0));
  ASSERT_EQ(count_family(modes, "MS"), 1);
  EXPECT_EQ(modes[0].family, "MS");
  EXPECT_EQ(modes[0].Lambda, 0.0);
}

TEST(Coax, InsulatingEndsGiveTemAtZeroWithoutMagnetostatic) {
  const auto modes = build_modes(CrossSection(Annulus{0.5, 1.0}), kPi, WallConfig::parse("ins-ends"), 4.5);
  EXPECT_EQ(count_family(modes, "MS"), 0);
  std::vector<double> tem;
  for (const auto &m : modes)
    if (m.family == "TEM") tem.push_back(m.Lambda);
  ASSERT_EQ(tem.size(), 3u);
  EXPECT_EQ(tem[0], 0.0);
  EXPECT_EQ(tem[2], 4.0);
}

TEST(Coax, MixedEndsSmallestPositiveIsQuarterWave) {
  const double l = 1.7;
  const auto modes = build_modes(CrossSection(Annulus{0.3, 1.0}), l, WallConfig::parse("mixed-ends"), 10.0);
  double smallest = 1e300;
  for (const auto &m : modes)
    if (m.Lambda > 0.0) smallest = std::min(smallest, m.Lambda);
  EXPECT_EQ(smallest, std::pow(kPi / (2 * l), 2));
}

TEST(Modes, SortedAndFieldsFinite) {
  const auto modes = build_modes(CrossSection(Annulus{0.4, 1.0}), 2.0, WallConfig{}, 30.0);
  for (std::size_t i = 1; i < modes.size(); ++i) EXPECT_LE(modes[i - 1].Lambda, modes[i].Lambda);
  for (const auto &m : modes) {
    EXPECT_NEAR(m.k * m.k, m.Lambda, 1e-12 * std::max(1.0, m.Lambda));
    const Vec3 x{0.5, 0.3, 0.9};
    ASSERT_TRUE(m.inside(x));
    for (const auto &c : m.E(x).c) EXPECT_TRUE(std::isfinite(std::abs(c)));
    for (const auto &c : m.H(x).c) EXPECT_TRUE(std::isfinite(std::abs(c)));
  }
}

TEST(Modes, FieldNormsMatchQuadrature) {
  const CrossSection cs(Disc{1.0});
  const auto modes = build_modes(cs, 1.5, WallConfig{}, 25.0);
  ProductDomain dom(cs, 1.5);
  const auto q = dom.quadrature(20);
  for (const auto &m : modes) {
    double e2 = 0.0, h2 = 0.0;
    for (const auto &p : q) {
      e2 += p.w * std::pow(norm(m.E(p.x)), 2);
      h2 += p.w * std::pow(norm(m.H(p.x)), 2);
    }
    EXPECT_NEAR(std::sqrt(e2), m.norm_E, 1e-8 * m.norm_E) << m.label();
    EXPECT_NEAR(std::sqrt(h2), m.norm_H, 1e-8 * std::max(1.0, m.norm_H)) << m.label();
  }
}

TEST(Table, MergeToleranceJoinsNearbyValues) {
  const auto modes = build_modes(CrossSection(Rectangle{1.0, 1.0001}), 1.0, WallConfig{}, 40.0);
  const auto fine = make_spectrum_table(modes, 1e-9);
  const auto coarse = make_spectrum_table(modes, 1e-3);
  EXPECT_LT(coarse.entries.size(), fine.entries.size());
  EXPECT_EQ(coarse.total(), fine.total());
  EXPECT_THROW(make_spectrum_table(modes, -1.0), DomainError);
}

TEST(Table, CsvHasHeaderAndOneRowPerEntry) {
  const auto t = spectrum_table(CrossSection(Rectangle{kPi, kPi}), kPi, WallConfig{}, 6.0, 1e-9);
  const std::string csv = t.to_csv();
  EXPECT_EQ(csv.rfind("Lambda,k,multiplicity,family,indices", 0), 0u);
  EXPECT_EQ(static_cast<std::size_t>(std::count(csv.begin(), csv.end(), '\n')), t.entries.size() + 1);
}

TEST(Assembly, RejectsBadBounds) {
  EXPECT_THROW(build_modes(CrossSection(Disc{1.0}), 0.0, WallConfig{}, 5.0), DomainError);
  EXPECT_THROW(build_modes(CrossSection(Disc{1.0}), 1.0, WallConfig{}, -1.0), DomainError);
}
