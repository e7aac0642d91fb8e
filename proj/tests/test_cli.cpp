#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>
#include <json.hpp>

#include "cli_app.hpp"

using namespace cavity;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "cavity_modes");
  std::vector<const char *> argv;
  for (const auto &a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string &s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

std::string data(const std::string &name) { return std::string(CAVITY_TEST_DATA) + "/" + name; }

} // namespace

TEST(Numbers, AcceptsDecimalsAndMultiplesOfPi) {
  EXPECT_EQ(cli::parse_number("2.5"), 2.5);
  EXPECT_DOUBLE_EQ(cli::parse_number("pi"), std::numbers::pi);
  EXPECT_DOUBLE_EQ(cli::parse_number("2pi"), 2 * std::numbers::pi);
  EXPECT_DOUBLE_EQ(cli::parse_number("0.5pi"), 0.5 * std::numbers::pi);
  EXPECT_THROW(cli::parse_number("abc"), FormatError);
  EXPECT_THROW(cli::parse_number("1.0x"), FormatError);
}

TEST(Spectrum, CubeCsv) {
  const auto r = invoke({"spectrum", "--shape", "cube", "--a", "pi", "--lmax", "8"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto l = lines(r.out);
  ASSERT_EQ(l.size(), 6u);
  EXPECT_EQ(l[0], "Lambda,k,multiplicity,family,indices");
  EXPECT_EQ(l[1].substr(0, l[1].find(',')), "2");
  EXPECT_NE(l[1].find(",3,"), std::string::npos);
}

TEST(Spectrum, ReferenceTables) {
  const auto cube = invoke({"spectrum", "--table", "cube", "--lmax", "26"});
  ASSERT_EQ(cube.code, 0);
  EXPECT_EQ(lines(cube.out).back(), "26,18");
  const auto bessel = invoke({"spectrum", "--table", "bessel-zeros"});
  ASSERT_EQ(bessel.code, 0);
  const auto l = lines(bessel.out);
  ASSERT_EQ(l.size(), 4u);
  EXPECT_EQ(l[0], "j,z0,z1,z2,zp0,zp1,zp2");
}

TEST(Spectrum, JsonFormat) {
  const auto r = invoke({"spectrum", "--shape", "coax", "--r0", "0.5", "--R", "1", "--l", "pi", "--lmax", "1.5",
                         "--format", "json"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  ASSERT_TRUE(j.contains("entries"));
  EXPECT_EQ(j["entries"][0]["Lambda"].get<double>(), 0.0);
  EXPECT_EQ(j["entries"][1]["Lambda"].get<double>(), 1.0);
}

TEST(Spectrum, GridMaskFromFile) {
  const auto r = invoke({"spectrum", "--shape", "grid", "--mask", data("square_ring.mask"), "--l", "1", "--lmax", "40"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("TEM"), std::string::npos);
}

TEST(Spectrum, ConfigFileAndFlagOverride) {
  const auto dir = std::filesystem::temp_directory_path() / "cavity_cli_test";
  std::filesystem::create_directories(dir);
  const auto path = (dir / "job.json").string();
  std::ofstream(path) << R"({"shape": "cube", "a": "pi", "lmax": 3})";
  const auto a = invoke({"spectrum", "--config", path});
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(lines(a.out).size(), 3u);
  const auto b = invoke({"spectrum", "--config", path, "--lmax", "2"});
  EXPECT_EQ(lines(b.out).size(), 2u);
  std::ofstream(path) << R"({"shape": "cube", "colour": "red"})";
  const auto c = invoke({"spectrum", "--config", path});
  EXPECT_EQ(c.code, 2);
  EXPECT_NE(c.err.find("colour"), std::string::npos);
}

TEST(Errors, ConfigErrorsExitTwo) {
  EXPECT_EQ(invoke({"spectrum", "--shape", "cube", "--a", "x1", "--lmax", "5"}).code, 2);
  EXPECT_EQ(invoke({"spectrum", "--shape", "torus", "--lmax", "5"}).code, 2);
  EXPECT_EQ(invoke({"spectrum", "--shape", "cube", "--a", "1", "--lmax", "5", "--walls", "open"}).code, 2);
  EXPECT_EQ(invoke({"spectrum", "--bogus"}).code, 2);
  EXPECT_EQ(invoke({}).code, 2);
}

TEST(Errors, HelpExitsZero) {
  const auto r = invoke({"--help"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("spectrum"), std::string::npos);
}

TEST(Field, TemFieldFallsOffAsOneOverR) {
  const auto r = invoke({"field", "--shape", "coax", "--r0", "0.5", "--R", "1", "--l", "pi", "--lmax", "1.5",
                         "--mode", "TEM", "--x", "0.6:0.9:4", "--y", "0", "--z", "0.5pi", "--format", "csv"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto l = lines(r.out);
  ASSERT_EQ(l.size(), 5u);
  EXPECT_EQ(l[0], "x,y,z,re_x,im_x,re_y,im_y,re_z,im_z,inside");
  std::vector<double> er;
  for (std::size_t i = 1; i < l.size(); ++i) {
    std::istringstream row(l[i]);
    std::vector<double> v;
    for (std::string c; std::getline(row, c, ',');) v.push_back(std::stod(c));
    er.push_back(std::hypot(v[3], v[4]) * v[0]);
  }
  // |E| r is constant along the ray
  for (double e : er) EXPECT_NEAR(e, er[0], 1e-12 * er[0]);
}

TEST(Field, SgridHeader) {
  const auto r = invoke({"field", "--shape", "cube", "--a", "pi", "--lmax", "2", "--mode", "TE/k1=1/k2=0",
                         "--field", "H", "--x", "0:pi:3", "--y", "0:pi:3", "--z", "1"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto l = lines(r.out);
  EXPECT_EQ(l[0], "# sgrid 1");
  EXPECT_EQ(l[2], "# field H");
  const auto data_rows = std::count_if(l.begin(), l.end(), [](const std::string &s) { return !s.empty() && s[0] != '#'; });
  EXPECT_EQ(data_rows, 9);
}

TEST(Field, AmbiguousSelectorListsCandidates) {
  const auto r = invoke({"field", "--shape", "cube", "--a", "pi", "--lmax", "2", "--mode", "TE"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("candidates"), std::string::npos);
  EXPECT_EQ(invoke({"field", "--shape", "cube", "--a", "pi", "--lmax", "2", "--mode", "TEM"}).code, 2);
}

TEST(Verify, AnalyticCylinderPasses) {
  const auto r = invoke({"verify", "--shape", "cyl", "--R", "1", "--l", "pi", "--count", "8"});
  ASSERT_EQ(r.code, 0) << r.out << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_TRUE(j["passed"].get<bool>());
  EXPECT_EQ(j["modes"].get<int>(), 8);
  std::vector<std::string> names;
  for (const auto &c : j["checks"]) names.push_back(c["name"]);
  for (const char *n : {"multiplicity", "div_E", "curlcurl_E", "boundary_E", "boundary_H", "gram_E"})
    EXPECT_NE(std::find(names.begin(), names.end(), n), names.end()) << n;
}

TEST(Verify, GridBackendCountCheck) {
  const auto r = invoke({"verify", "--shape", "cyl", "--R", "1", "--l", "pi", "--backend", "grid", "--h", "0.0625",
                         "--lmax", "15"});
  ASSERT_EQ(r.code, 0) << r.out << r.err;
  EXPECT_NE(r.out.find("count_vs_analytic"), std::string::npos);
}

TEST(Verify, CoarseMergeToleranceFailsWithExitOne) {
  const auto r = invoke({"verify", "--shape", "cuboid", "--a", "1", "--b", "1.01", "--l", "1", "--lmax", "40",
                         "--merge-tol", "0.05"});
  EXPECT_EQ(r.code, 1);
  EXPECT_FALSE(nlohmann::json::parse(r.out)["passed"].get<bool>());
}

TEST(Verify, WritesToOutFile) {
  const auto path = (std::filesystem::temp_directory_path() / "cavity_cli_verify.json").string();
  std::filesystem::remove(path);
  const auto r = invoke({"verify", "--shape", "ball", "--R", "1", "--count", "3", "--out", path});
  ASSERT_EQ(r.code, 0) << r.err;
  std::ifstream f(path);
  ASSERT_TRUE(f.good());
  EXPECT_TRUE(nlohmann::json::parse(f)["passed"].get<bool>());
}
