#pragma once

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <memory>
#include <numbers>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "cavity/cavity.hpp"

namespace cavity::cli {

using json = nlohmann::ordered_json;

enum ExitCode { kOk = 0, kCheckFailed = 1, kConfigError = 2, kSolverError = 3 };

/// Decimal number or a multiple of pi: "pi", "2pi", "0.5pi", "-1.5".
inline double parse_number(const std::string &text) {
  std::string t = text;
  double scale = 1.0;
  if (t.size() >= 2 && t.compare(t.size() - 2, 2, "pi") == 0) {
    scale = std::numbers::pi;
    t.resize(t.size() - 2);
    if (t.empty() || t == "+") t = "1";
    if (t == "-") t = "-1";
    if (!t.empty() && t.back() == '*') t.pop_back();
  }
  double v = 0.0;
  const char *first = t.data() + (t.size() > 1 && t[0] == '+' ? 1 : 0);
  const auto [ptr, ec] = std::from_chars(first, t.data() + t.size(), v);
  if (ec != std::errc() || ptr != t.data() + t.size() || !std::isfinite(v)) {
    throw FormatError("'" + text + "' is not a number (decimal or a multiple of pi)");
  }
  return v * scale;
}

/// Raw settings from a JSON config file and command-line flags (flags win).
struct JobConfig {
  std::map<std::string, std::string> values;

  static const std::vector<std::string> &keys() {
    static const std::vector<std::string> k = {
        "shape", "a", "b", "l", "r0", "R", "lmax", "kmax", "walls", "backend", "h", "eps", "mask", "out", "format",
        "seed", "merge_tol", "count", "table", "mode", "field", "x", "y", "z", "basis", "s"};
    return k;
  }

  bool has(const std::string &k) const { return values.count(k) > 0; }

  std::string str(const std::string &k, const std::string &fallback = "") const {
    const auto it = values.find(k);
    return it == values.end() ? fallback : it->second;
  }

  double number(const std::string &k) const {
    const auto it = values.find(k);
    if (it == values.end()) throw DomainError("missing required setting '" + k + "'");
    try {
      return parse_number(it->second);
    } catch (const FormatError &e) {
      throw FormatError("setting '" + k + "': " + e.what());
    }
  }

  double number(const std::string &k, double fallback) const { return has(k) ? number(k) : fallback; }

  double positive(const std::string &k) const {
    const double v = number(k);
    if (!(v > 0.0)) throw DomainError("setting '" + k + "' must be positive");
    return v;
  }

  long integer(const std::string &k, long fallback) const {
    if (!has(k)) return fallback;
    const auto &t = values.at(k);
    long v = 0;
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (ec != std::errc() || ptr != t.data() + t.size()) throw FormatError("setting '" + k + "': '" + t + "' is not an integer");
    return v;
  }

  /// Loads a JSON object whose fields are a subset of keys(); values are numbers or strings.
  void load_json(const std::string &path) {
    std::ifstream f(path);
    if (!f) throw FormatError("config: cannot open '" + path + "'");
    json j;
    try {
      j = json::parse(f);
    } catch (const json::parse_error &e) {
      throw FormatError("config " + path + ": " + e.what());
    }
    if (!j.is_object()) throw FormatError("config " + path + ": top level must be an object");
    for (const auto &[key, v] : j.items()) {
      if (std::find(keys().begin(), keys().end(), key) == keys().end()) {
        throw FormatError("config " + path + ": unknown field '" + key + "'");
      }
      if (v.is_string()) values[key] = v.get<std::string>();
      else if (v.is_number()) values[key] = v.dump();
      else throw FormatError("config " + path + ": field '" + key + "' must be a number or a string");
    }
  }
};

/// Modes of a configured problem plus what is needed to check them.
struct Problem {
  std::vector<ModeSpec> modes;
  std::unique_ptr<Domain> domain;
  WallConfig walls;
  bool analytic = true;
  bool ball = false;
  bool variable_eps = false;
  std::optional<CrossSection> cross_section;
  double length = 0.0;
};

namespace detail {

inline std::string shape_of(const JobConfig &cfg) {
  if (!cfg.has("shape")) throw DomainError("missing required setting 'shape'");
  const auto s = cfg.str("shape");
  static const std::vector<std::string> shapes = {"cube", "cuboid", "cyl", "coax", "ball", "grid"};
  if (std::find(shapes.begin(), shapes.end(), s) == shapes.end()) {
    throw DomainError("shape: expected cube, cuboid, cyl, coax, ball or grid, got '" + s + "'");
  }
  return s;
}

inline bool grid_backend(const JobConfig &cfg) {
  const auto b = cfg.str("backend", "analytic");
  if (b != "analytic" && b != "grid") throw DomainError("backend: expected analytic or grid, got '" + b + "'");
  return b == "grid" || cfg.str("shape") == "grid";
}

/// Cross section and interval length of a product-domain job.
inline std::pair<CrossSection, double> product_geometry(const JobConfig &cfg) {
  const auto shape = shape_of(cfg);
  const bool grid = grid_backend(cfg);
  auto h = [&] { return cfg.positive("h"); };
  if (shape == "cube" || shape == "cuboid") {
    const double a = cfg.positive("a");
    const double b = shape == "cube" ? a : cfg.positive("b");
    const double l = shape == "cube" ? a : cfg.positive("l");
    if (shape == "cube" && (cfg.has("b") || cfg.has("l"))) throw DomainError("cube takes 'a' only");
    if (grid) return {CrossSection(GridMask::rectangle(a, b, h())), l};
    return {CrossSection(Rectangle{a, b}), l};
  }
  if (shape == "cyl") {
    const double R = cfg.positive("R");
    if (grid) return {CrossSection(GridMask::disc(R, h())), cfg.positive("l")};
    return {CrossSection(Disc{R}), cfg.positive("l")};
  }
  if (shape == "coax") {
    const double r0 = cfg.positive("r0"), R = cfg.positive("R");
    if (grid) return {CrossSection(GridMask::annulus(r0, R, h())), cfg.positive("l")};
    return {CrossSection(Annulus{r0, R}), cfg.positive("l")};
  }
  if (shape == "grid") {
    if (!cfg.has("mask")) throw DomainError("shape grid needs a 'mask' file");
    return {CrossSection(GridMask::load(cfg.str("mask"))), cfg.positive("l")};
  }
  throw DomainError("shape '" + shape + "' is not a product domain");
}

/// Physical variable-permittivity modes with Lambda <= lambda_max on omega x (0, pi).
inline std::vector<ModeSpec> eps_modes(const CrossSection &cs, const PermittivityMap &eps, double lambda_max,
                                       double h, double s) {
  std::vector<ModeSpec> out;
  ReducedOptions opt;
  opt.h = h;
  opt.check_s = false;
  for (int m = 0; m * m <= lambda_max; ++m) {
    int count = 8;
    std::vector<ReducedEigenpair> pairs;
    for (;;) {
      pairs = physical_only(reduced_spectrum(cs, eps, m, s, count, opt));
      if (static_cast<int>(pairs.size()) < count || pairs.back().Lambda > lambda_max) break;
      count *= 2;
    }
    int j = 0;
    for (const auto &p : pairs) {
      ++j;
      if (p.Lambda > lambda_max) break;
      // harmonic fields at Lambda = 0 are magnetostatic; no E to reconstruct
      if (p.Lambda < 1e-10 * std::max(1.0, lambda_max)) {
        ModeSpec ms;
        ms.polarization = Polarization::Magnetostatic;
        ms.family = "MS";
        ms.indices = "m=" + std::to_string(m) + "/j=" + std::to_string(j);
        ms.order = {m, j};
        ms.E = [](Vec3) { return CVec3{}; };
        ms.H = [](Vec3) -> CVec3 { throw DomainError("field: magnetostatic variable-permittivity fields are not reconstructed"); };
        out.push_back(std::move(ms));
        continue;
      }
      ModeSpec ms = lift_to_3d(p);
      ms.indices = "m=" + std::to_string(m) + "/j=" + std::to_string(j);
      ms.order = {m, j};
      out.push_back(std::move(ms));
    }
  }
  std::stable_sort(out.begin(), out.end(), mode_less);
  return out;
}

} // namespace detail

/// Builds all modes with Lambda <= lambda_max (ball: k <= sqrt(lambda_max)).
inline Problem build_problem(const JobConfig &cfg, double lambda_max) {
  Problem p;
  const auto shape = detail::shape_of(cfg);
  p.walls = WallConfig::parse(cfg.str("walls", "cond"));
  if (shape == "ball") {
    if (cfg.str("backend", "analytic") != "analytic") throw DomainError("ball: only the analytic backend exists");
    if (cfg.has("eps")) throw DomainError("ball: variable permittivity is not supported");
    if (!p.walls.all_conducting()) throw DomainError("ball: walls must be cond");
    const double R = cfg.positive("R");
    const auto basis_name = cfg.str("basis", "complex");
    if (basis_name != "complex" && basis_name != "real") throw DomainError("basis: expected complex or real");
    p.ball = true;
    p.domain = std::make_unique<BallDomain>(R);
    p.modes = build_ball_modes(R, std::sqrt(lambda_max),
                               basis_name == "real" ? HarmonicBasis::Real : HarmonicBasis::Complex);
    return p;
  }
  auto [cs, length] = detail::product_geometry(cfg);
  p.analytic = !cs.is_grid();
  p.length = length;
  p.domain = std::make_unique<ProductDomain>(cs, length);
  if (cfg.has("eps")) {
    if (!p.walls.all_conducting()) throw DomainError("eps: variable permittivity needs walls cond");
    if (std::abs(length - std::numbers::pi) > 1e-12) throw DomainError("eps: the interval must be (0, pi)");
    if (!cs.is_grid() && !std::holds_alternative<Rectangle>(cs.shape())) {
      throw DomainError("eps: use the grid backend for curved cross sections");
    }
    const auto eps = PermittivityMap::load(cfg.str("eps"));
    const double h = cs.is_grid() ? cs.grid().h() : cfg.positive("h");
    p.variable_eps = true;
    p.analytic = false;
    p.modes = detail::eps_modes(cs, eps, lambda_max, h, cfg.number("s", 1.0));
    p.cross_section = cs;
    return p;
  }
  p.modes = build_modes(cs, length, p.walls, lambda_max);
  p.cross_section = std::move(cs);
  return p;
}

/// The `count` lowest modes, growing the eigenvalue bound until enough exist.
inline Problem lowest_modes(const JobConfig &cfg, int count) {
  double bound = 4.0;
  for (int attempt = 0; attempt < 40; ++attempt, bound *= 1.6) {
    auto p = build_problem(cfg, bound);
    if (static_cast<int>(p.modes.size()) >= count) {
      p.modes.resize(static_cast<std::size_t>(count));
      return p;
    }
  }
  throw TruncationError("could not find " + std::to_string(count) + " modes");
}

inline double lambda_max_of(const JobConfig &cfg) {
  if (cfg.has("lmax") && cfg.has("kmax")) throw DomainError("give either lmax or kmax, not both");
  if (cfg.has("kmax")) {
    const double k = cfg.positive("kmax");
    return k * k;
  }
  return cfg.positive("lmax");
}

// ---- spectrum --------------------------------------------------------------

inline std::string cube_table_csv(double lambda_max) {
  const auto table = spectrum_table(CrossSection(Rectangle{std::numbers::pi, std::numbers::pi}), std::numbers::pi,
                                    WallConfig{}, lambda_max, 1e-9);
  std::string out = "Lambda,multiplicity\n";
  char buf[64];
  for (const auto &e : table.entries) {
    std::snprintf(buf, sizeof buf, "%.17g,%d\n", e.Lambda, e.multiplicity);
    out += buf;
  }
  return out;
}

inline std::string bessel_table_csv() {
  std::string out = "j,z0,z1,z2,zp0,zp1,zp2\n";
  std::vector<std::vector<double>> cols;
  for (int n = 0; n <= 2; ++n) cols.push_back(j_zeros(n, 3).zeros);
  for (int n = 0; n <= 2; ++n) cols.push_back(j_prime_zeros(n, 3).zeros);
  char buf[64];
  for (int j = 0; j < 3; ++j) {
    out += std::to_string(j + 1);
    for (const auto &c : cols) {
      std::snprintf(buf, sizeof buf, ",%.17g", c[static_cast<std::size_t>(j)]);
      out += buf;
    }
    out += '\n';
  }
  return out;
}

inline json table_json(const SpectrumTable &t) {
  json rows = json::array();
  for (const auto &e : t.entries) {
    json c = json::array();
    for (const auto &x : e.contributors) c.push_back({{"family", x.family}, {"indices", x.indices}, {"Lambda", x.Lambda}});
    rows.push_back({{"Lambda", e.Lambda},
                    {"k", std::sqrt(std::max(0.0, e.Lambda))},
                    {"multiplicity", e.multiplicity},
                    {"contributors", c}});
  }
  return json{{"merge_tol", t.merge_tol}, {"entries", rows}};
}

inline void emit(const JobConfig &cfg, std::ostream &out, const std::string &text) {
  if (cfg.has("out")) {
    std::ofstream f(cfg.str("out"), std::ios::binary);
    if (!f) throw FormatError("cannot write '" + cfg.str("out") + "'");
    f << text;
    if (!f) throw FormatError("write to '" + cfg.str("out") + "' failed");
    return;
  }
  out << text;
}

inline int cmd_spectrum(const JobConfig &cfg, std::ostream &out) {
  if (cfg.has("table")) {
    const auto t = cfg.str("table");
    if (t == "cube") emit(cfg, out, cube_table_csv(cfg.number("lmax", 26.0)));
    else if (t == "bessel-zeros") emit(cfg, out, bessel_table_csv());
    else throw DomainError("table: expected cube or bessel-zeros, got '" + t + "'");
    return kOk;
  }
  const auto fmt = cfg.str("format", "csv");
  if (fmt != "csv" && fmt != "json") throw DomainError("format: spectrum writes csv or json");
  const auto problem = build_problem(cfg, lambda_max_of(cfg));
  const auto table = make_spectrum_table(problem.modes, cfg.number("merge_tol", 1e-9));
  emit(cfg, out, fmt == "csv" ? table.to_csv() : table_json(table).dump(2) + "\n");
  return kOk;
}

// ---- field -----------------------------------------------------------------

/// Modes matching "FAMILY[/key=value...]": same family and every given index token present.
inline const ModeSpec &select_mode(const std::vector<ModeSpec> &modes, const std::string &selector) {
  auto split = [](const std::string &s) {
    std::vector<std::string> parts;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, '/'))
      if (!item.empty()) parts.push_back(item);
    return parts;
  };
  const auto want = split(selector);
  if (want.empty()) throw DomainError("mode: empty selector");
  std::vector<const ModeSpec *> hits;
  for (const auto &m : modes) {
    if (m.family != want[0]) continue;
    const auto have = split(m.indices);
    bool ok = true;
    for (std::size_t i = 1; i < want.size() && ok; ++i) ok = std::find(have.begin(), have.end(), want[i]) != have.end();
    if (ok) hits.push_back(&m);
  }
  if (hits.size() == 1) return *hits.front();
  if (hits.empty()) throw DomainError("mode: no mode matches '" + selector + "' below the eigenvalue bound");
  std::string msg = "mode: '" + selector + "' is ambiguous; candidates:";
  for (const auto *m : hits) msg += " " + m->label();
  throw DomainError(msg);
}

inline int cmd_field(const JobConfig &cfg, std::ostream &out) {
  if (!cfg.has("mode")) throw DomainError("field: missing required setting 'mode'");
  const auto problem = build_problem(cfg, lambda_max_of(cfg));
  const ModeSpec &mode = select_mode(problem.modes, cfg.str("mode"));
  const auto which = cfg.str("field", "E");
  if (which != "E" && which != "H") throw DomainError("field: expected E or H");
  const auto [lo, hi] = problem.domain->bounds();
  SampleGrid grid;
  auto axis = [&](const std::string &k, double a, double b) {
    if (cfg.has(k)) return parse_axis(cfg.str(k), parse_number);
    return AxisSpec{a, b, 11};
  };
  grid.x = axis("x", lo.x, hi.x);
  grid.y = axis("y", lo.y, hi.y);
  grid.z = axis("z", lo.z, hi.z);
  const auto samples = sample_field(mode, which == "E" ? FieldKind::E : FieldKind::H, grid);
  const auto fmt = cfg.str("format", "sgrid");
  std::ostringstream s;
  if (fmt == "sgrid") write_sgrid(s, samples);
  else if (fmt == "csv") write_field_csv(s, samples);
  else throw DomainError("format: field writes sgrid or csv");
  emit(cfg, out, s.str());
  return kOk;
}

// ---- verify ----------------------------------------------------------------

inline json report_json(const CheckReport &r) {
  json d = json::array();
  for (const auto &o : r.details) d.push_back({{"mode", o.mode}, {"x", {o.x.x, o.x.y, o.x.z}}, {"value", o.value}});
  return {{"name", r.name},       {"max_residual", r.max_residual}, {"tolerance", r.tolerance},
          {"passed", r.passed},   {"samples", r.samples},           {"details", d}};
}

/// Grid count within the analytic counts at (1 -/+ delta) lambda_max.
inline CheckReport count_check(const Problem &grid, const JobConfig &cfg, double lambda_max, double delta) {
  JobConfig an = cfg;
  an.values["backend"] = "analytic";
  const auto lo = build_problem(an, lambda_max * (1.0 - delta)).modes.size();
  const auto hi = build_problem(an, lambda_max * (1.0 + delta)).modes.size();
  const auto n = grid.modes.size();
  CheckReport r;
  r.name = "count_vs_analytic";
  r.tolerance = 0.0;
  r.samples = 1;
  const double miss = n < lo ? static_cast<double>(lo - n) : n > hi ? static_cast<double>(n - hi) : 0.0;
  record_offender(r, {"count=" + std::to_string(n) + " analytic=[" + std::to_string(lo) + "," + std::to_string(hi) + "]",
                      {}, miss});
  r.finish();
  return r;
}

/// TEM eigenvalues equal the axial ones (m pi / l)^2 (mixed ends: ((m - 1/2) pi / l)^2).
inline CheckReport tem_check(const Problem &p) {
  CheckReport r;
  r.name = "tem_axial";
  r.tolerance = 1e-14;
  const auto ax = axial_choice(p.walls).tem;
  for (const auto &m : p.modes) {
    if (m.polarization != Polarization::TEM) continue;
    const int idx = m.order.size() > 1 ? m.order[1] : 0;
    const double mu = axial_eigenpair(ax, p.length, idx).mu;
    record_offender(r, {m.label(), {}, std::abs(m.Lambda - mu) / std::max(1.0, mu)});
    ++r.samples;
  }
  r.finish();
  return r;
}

inline int cmd_verify(const JobConfig &cfg, std::ostream &out) {
  const auto fmt = cfg.str("format", "json");
  if (fmt != "json") throw DomainError("format: verify writes json");
  CheckConfig cc;
  cc.seed = static_cast<std::uint64_t>(cfg.integer("seed", static_cast<long>(kDefaultSeed)));
  const double merge_tol = cfg.number("merge_tol", 1e-9);
  const bool by_count = !cfg.has("lmax") && !cfg.has("kmax");
  const int count = static_cast<int>(cfg.integer("count", 20));
  if (count < 1) throw DomainError("count must be >= 1");
  const Problem p = by_count ? lowest_modes(cfg, count) : build_problem(cfg, lambda_max_of(cfg));

  std::vector<CheckReport> reports;
  const auto table = make_spectrum_table(p.modes, merge_tol);
  reports.push_back(multiplicity_check(table));
  if (p.analytic) {
    for (auto &r : field_checks(p.modes, *p.domain, p.walls, cc)) reports.push_back(std::move(r));
    reports.push_back(gram_check(p.modes, *p.domain, cc));
  } else if (!p.variable_eps && detail::shape_of(cfg) != "grid") {
    const double top = p.modes.empty() ? lambda_max_of(cfg) : by_count ? p.modes.back().Lambda : lambda_max_of(cfg);
    const Problem full = by_count ? build_problem(cfg, top) : Problem{};
    reports.push_back(count_check(by_count ? full : p, cfg, top, 0.05));
  }
  if (!p.ball && p.cross_section && p.cross_section->D() > 1 && !p.variable_eps) reports.push_back(tem_check(p));

  bool passed = true;
  json checks = json::array();
  for (const auto &r : reports) {
    passed = passed && r.passed;
    checks.push_back(report_json(r));
  }
  json settings = json::object();
  for (const auto &[k, v] : cfg.values) settings[k] = v;
  json doc = {{"settings", settings}, {"modes", p.modes.size()}, {"passed", passed}, {"checks", checks}};
  emit(cfg, out, doc.dump(2) + "\n");
  return passed ? kOk : kCheckFailed;
}

// ---- entry point -------------------------------------------------------------

inline int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
  CLI::App app{"Maxwell cavity eigenmodes: spectra, fields and verification", "cavity_modes"};
  app.require_subcommand(1);
  // "-h" is taken by the grid cell size
  app.set_help_flag("--help", "print help and exit");
  std::map<std::string, std::string> flags;
  std::string config_path;

  auto add_common = [&](CLI::App *sub) {
    sub->add_option("--config", config_path, "JSON job file; flags override its fields");
    const std::vector<std::pair<std::string, std::string>> opts = {
        {"shape", "cube|cuboid|cyl|coax|ball|grid"},
        {"a", "box side x (cube: all sides)"},
        {"b", "box side y"},
        {"l", "interval length"},
        {"r0", "inner radius"},
        {"R", "outer or ball radius"},
        {"lmax", "eigenvalue bound Lambda_max"},
        {"kmax", "frequency bound k_max"},
        {"walls", "cond|ins-ends|mixed-ends"},
        {"backend", "analytic|grid"},
        {"h", "grid cell size"},
        {"eps", "relative permittivity file"},
        {"mask", "grid mask file"},
        {"out", "output path (default stdout)"},
        {"format", "csv|json|sgrid"},
        {"seed", "sampling seed"},
        {"merge_tol", "relative tolerance for merging eigenvalues"},
        {"basis", "ball harmonics: complex|real"},
        {"s", "divergence regularization weight"}};
    for (const auto &[name, help] : opts) {
      const std::string flag = name == "merge_tol" ? "--merge-tol,--merge_tol" : "--" + name;
      sub->add_option_function<std::string>(flag, [&flags, name = name](const std::string &v) { flags[name] = v; }, help);
    }
  };

  auto *spectrum = app.add_subcommand("spectrum", "eigenvalue table as CSV or JSON");
  add_common(spectrum);
  spectrum->add_option_function<std::string>("--table", [&](const std::string &v) { flags["table"] = v; },
                                             "reference table: cube|bessel-zeros");
  auto *field = app.add_subcommand("field", "sample one mode's field on a grid");
  add_common(field);
  field->add_option_function<std::string>("--mode", [&](const std::string &v) { flags["mode"] = v; },
                                          "selector FAMILY/key=value/...");
  field->add_option_function<std::string>("--field", [&](const std::string &v) { flags["field"] = v; }, "E|H");
  for (const char *ax : {"x", "y", "z"}) {
    field->add_option_function<std::string>(std::string("--") + ax, [&flags, ax](const std::string &v) { flags[ax] = v; },
                                            "axis samples lo:hi:n");
  }
  auto *verify = app.add_subcommand("verify", "run the field and spectrum checks, JSON report");
  add_common(verify);
  verify->add_option_function<std::string>("--count", [&](const std::string &v) { flags["count"] = v; },
                                           "number of lowest modes (default 20)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &e) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp &e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError &e) {
    err << "error: " << e.what() << "\n";
    return kConfigError;
  }

  try {
    JobConfig cfg;
    if (!config_path.empty()) cfg.load_json(config_path);
    for (const auto &[k, v] : flags) cfg.values[k] = v;
    if (spectrum->parsed()) return cmd_spectrum(cfg, out);
    if (field->parsed()) return cmd_field(cfg, out);
    return cmd_verify(cfg, out);
  } catch (const DomainError &e) {
    err << "error: " << e.what() << "\n";
    return kConfigError;
  } catch (const FormatError &e) {
    err << "error: " << e.what() << "\n";
    return kConfigError;
  } catch (const std::out_of_range &e) {
    err << "error: " << e.what() << "\n";
    return kConfigError;
  } catch (const std::exception &e) {
    err << "solver failure: " << e.what() << "\n";
    return kSolverError;
  }
}

} // namespace cavity::cli
