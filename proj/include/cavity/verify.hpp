#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <memory>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "assembly.hpp"
#include "errors.hpp"
#include "mode.hpp"
#include "parallel.hpp"
#include "transverse.hpp"
#include "vec.hpp"

namespace cavity {

inline constexpr std::uint64_t kDefaultSeed = 0x5EED;

/// Uniform double in [0, 1) from the top 53 bits, identical on every platform.
inline double uniform01(std::mt19937_64 &rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

// ---- quadrature -----------------------------------------------------------

struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Gauss-Legendre rule on [a, b].
inline QuadratureRule gauss_legendre(int n, double a, double b) {
  if (n < 1) throw DomainError("gauss_legendre: need at least one node");
  QuadratureRule r;
  for (int i = 1; i <= n; ++i) {
    double z = std::cos(std::numbers::pi * (i - 0.25) / (n + 0.5));
    double dp = 1.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = z;
      for (int j = 2; j <= n; ++j) {
        const double p2 = ((2.0 * j - 1.0) * z * p1 - (j - 1.0) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      dp = n == 1 ? 1.0 : n * (z * p1 - p0) / (z * z - 1.0);
      const double dz = p1 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    r.nodes.push_back(0.5 * (a + b) + 0.5 * (b - a) * z);
    r.weights.push_back((b - a) / ((1.0 - z * z) * dp * dp));
  }
  return r;
}

struct QuadraturePoint {
  Vec3 x;
  double w;
};

// ---- domains ----------------------------------------------------------------

enum class WallTag { Lateral, End0, EndL, Sphere };

struct BoundarySample {
  Vec3 x;
  Vec3 normal; ///< outward unit normal
  WallTag wall;
};

class Domain {
public:
  virtual ~Domain() = default;
  virtual bool contains(Vec3 x) const = 0;
  /// Distance to the boundary for interior points (0 outside).
  virtual double distance_to_boundary(Vec3 x) const = 0;
  /// Axis-aligned bounding box (min, max).
  virtual std::pair<Vec3, Vec3> bounds() const = 0;
  /// Boundary points with outward normals; edge points appear once per adjacent face.
  virtual std::vector<BoundarySample> sample_boundary(int per_face) const = 0;
  /// Tensorized quadrature with `order` Gauss points per direction.
  virtual std::vector<QuadraturePoint> quadrature(int order) const = 0;
  virtual std::string name() const = 0;
  /// Smallest geometric length (side, radius, inner radius); fields vary on this scale.
  virtual double feature_size() const = 0;

  /// Uniform interior points at least `margin` from the boundary.
  std::vector<Vec3> sample_interior(int count, double margin, std::uint64_t seed = kDefaultSeed) const {
    std::mt19937_64 rng(seed);
    const auto [lo, hi] = bounds();
    std::vector<Vec3> out;
    long attempts = 0;
    while (static_cast<int>(out.size()) < count) {
      if (++attempts > 1000L * count + 100000L) throw DomainError("sample_interior: domain too thin for margin");
      Vec3 x{lo.x + (hi.x - lo.x) * uniform01(rng), lo.y + (hi.y - lo.y) * uniform01(rng),
             lo.z + (hi.z - lo.z) * uniform01(rng)};
      if (contains(x) && distance_to_boundary(x) > margin) out.push_back(x);
    }
    return out;
  }
};

/// omega x (0, l) for any cross section.
class ProductDomain : public Domain {
public:
  ProductDomain(CrossSection cs, double length) : cs_(std::move(cs)), length_(length) {
    if (!(length > 0.0)) throw DomainError("product domain: length must be positive");
  }

  const CrossSection &cross_section() const { return cs_; }
  double length() const { return length_; }

  bool contains(Vec3 x) const override {
    return x.z >= 0.0 && x.z <= length_ && cs_.contains(x.perp(), 0.0);
  }

  double distance_to_boundary(Vec3 x) const override {
    if (!contains(x)) return 0.0;
    return std::min({x.z, length_ - x.z, distance_2d(x.perp())});
  }

  std::pair<Vec3, Vec3> bounds() const override {
    const auto b = cs_.bounds();
    return {Vec3{b[0], b[1], 0.0}, Vec3{b[2], b[3], length_}};
  }

  std::string name() const override { return cs_.describe() + " x (0, " + std::to_string(length_) + ")"; }

  double feature_size() const override {
    const auto &shape = cs_.shape();
    double s = length_;
    if (const auto *r = std::get_if<Rectangle>(&shape)) s = std::min({s, r->l1, r->l2});
    else if (const auto *d = std::get_if<Disc>(&shape)) s = std::min(s, d->R);
    else if (const auto *a = std::get_if<Annulus>(&shape)) s = std::min({s, a->r0, a->R - a->r0});
    else s = std::min(s, cs_.grid().h());
    return s;
  }

  std::vector<BoundarySample> sample_boundary(int per_face) const override {
    std::vector<BoundarySample> out;
    const int n = std::max(per_face, 2);
    // end faces: cross-section points at x3 = 0 and l
    for (const auto &p : section_points(n)) {
      out.push_back({Vec3{p.x, p.y, 0.0}, Vec3{0, 0, -1}, WallTag::End0});
      out.push_back({Vec3{p.x, p.y, length_}, Vec3{0, 0, 1}, WallTag::EndL});
    }
    // lateral wall: boundary curve points at several heights, including both ends
    const auto curve = boundary_curve(n);
    for (int iz = 0; iz <= n; ++iz) {
      const double z = length_ * iz / n;
      for (const auto &[p, nrm] : curve) {
        out.push_back({Vec3{p.x, p.y, z}, Vec3{nrm.x, nrm.y, 0.0}, WallTag::Lateral});
        // edge points also belong to the end faces
        if (iz == 0) out.push_back({Vec3{p.x, p.y, z}, Vec3{0, 0, -1}, WallTag::End0});
        if (iz == n) out.push_back({Vec3{p.x, p.y, z}, Vec3{0, 0, 1}, WallTag::EndL});
      }
    }
    return out;
  }

  std::vector<QuadraturePoint> quadrature(int order) const override {
    const auto gz = gauss_legendre(order, 0.0, length_);
    std::vector<QuadraturePoint> out;
    for (const auto &[p, w] : section_quadrature(order))
      for (std::size_t k = 0; k < gz.nodes.size(); ++k) out.push_back({Vec3{p.x, p.y, gz.nodes[k]}, w * gz.weights[k]});
    return out;
  }

  /// 2D quadrature on the cross section.
  std::vector<std::pair<Vec2, double>> section_quadrature(int order) const {
    std::vector<std::pair<Vec2, double>> out;
    const auto &shape = cs_.shape();
    if (const auto *r = std::get_if<Rectangle>(&shape)) {
      const auto gx = gauss_legendre(order, 0.0, r->l1), gy = gauss_legendre(order, 0.0, r->l2);
      for (std::size_t i = 0; i < gx.nodes.size(); ++i)
        for (std::size_t j = 0; j < gy.nodes.size(); ++j)
          out.push_back({Vec2{gx.nodes[i], gy.nodes[j]}, gx.weights[i] * gy.weights[j]});
    } else if (std::holds_alternative<Disc>(shape) || std::holds_alternative<Annulus>(shape)) {
      const double r0 = std::holds_alternative<Annulus>(shape) ? std::get<Annulus>(shape).r0 : 0.0;
      const double R = std::holds_alternative<Annulus>(shape) ? std::get<Annulus>(shape).R : std::get<Disc>(shape).R;
      const auto gr = gauss_legendre(order, r0, R);
      const int nphi = std::max(64, 2 * order);
      for (std::size_t i = 0; i < gr.nodes.size(); ++i)
        for (int j = 0; j < nphi; ++j) {
          const double phi = 2.0 * std::numbers::pi * (j + 0.5) / nphi;
          const double r = gr.nodes[i];
          out.push_back({Vec2{r * std::cos(phi), r * std::sin(phi)}, gr.weights[i] * r * 2.0 * std::numbers::pi / nphi});
        }
    } else {
      // 2 x 2 Gauss points per interior cell
      const auto &g = cs_.grid();
      const double h = g.h(), a = 0.5 - 0.5 / std::sqrt(3.0), b = 0.5 + 0.5 / std::sqrt(3.0);
      for (const auto &[i, j] : g.cells()) {
        const Vec2 o{g.origin().x + i * h, g.origin().y + j * h};
        for (double s : {a, b})
          for (double t : {a, b}) out.push_back({Vec2{o.x + s * h, o.y + t * h}, 0.25 * h * h});
      }
    }
    return out;
  }

private:
  double distance_2d(Vec2 p) const {
    const auto &shape = cs_.shape();
    if (const auto *r = std::get_if<Rectangle>(&shape)) return std::min({p.x, r->l1 - p.x, p.y, r->l2 - p.y});
    if (const auto *d = std::get_if<Disc>(&shape)) return d->R - std::hypot(p.x, p.y);
    if (const auto *a = std::get_if<Annulus>(&shape)) {
      const double r = std::hypot(p.x, p.y);
      return std::min(r - a->r0, a->R - r);
    }
    // distance to the nearest non-interior cell within a bounded window
    const auto &g = cs_.grid();
    const double h = g.h();
    const int window = 8;
    const int ci = static_cast<int>(std::floor((p.x - g.origin().x) / h));
    const int cj = static_cast<int>(std::floor((p.y - g.origin().y) / h));
    double best = (window + 1) * h;
    for (int j = cj - window; j <= cj + window; ++j)
      for (int i = ci - window; i <= ci + window; ++i) {
        if (g.interior(i, j)) continue;
        const double x0 = g.origin().x + i * h, y0 = g.origin().y + j * h;
        const double dx = std::max({x0 - p.x, 0.0, p.x - (x0 + h)});
        const double dy = std::max({y0 - p.y, 0.0, p.y - (y0 + h)});
        best = std::min(best, std::hypot(dx, dy));
      }
    return best;
  }

  /// Points of the closed cross section on a regular pattern.
  std::vector<Vec2> section_points(int n) const {
    std::vector<Vec2> out;
    const auto b = cs_.bounds();
    for (int j = 0; j <= n; ++j)
      for (int i = 0; i <= n; ++i) {
        const Vec2 p{b[0] + (b[2] - b[0]) * i / n, b[1] + (b[3] - b[1]) * j / n};
        if (cs_.contains(p, 1e-12)) out.push_back(p);
      }
    return out;
  }

  /// Boundary curve samples with outward normals: per-side uniform points plus side midpoints.
  std::vector<std::pair<Vec2, Vec2>> boundary_curve(int n) const {
    std::vector<std::pair<Vec2, Vec2>> out;
    const auto &shape = cs_.shape();
    if (const auto *r = std::get_if<Rectangle>(&shape)) {
      for (int i = 0; i <= n; ++i) {
        const double s = static_cast<double>(i) / n;
        out.push_back({Vec2{s * r->l1, 0.0}, Vec2{0, -1}});
        out.push_back({Vec2{s * r->l1, r->l2}, Vec2{0, 1}});
        out.push_back({Vec2{0.0, s * r->l2}, Vec2{-1, 0}});
        out.push_back({Vec2{r->l1, s * r->l2}, Vec2{1, 0}});
      }
      return out;
    }
    auto circle = [&](double radius, double sign) {
      const int m = 4 * n;
      for (int i = 0; i < m; ++i) {
        const double phi = 2.0 * std::numbers::pi * i / m;
        const Vec2 u{std::cos(phi), std::sin(phi)};
        out.push_back({Vec2{radius * u.x, radius * u.y}, Vec2{sign * u.x, sign * u.y}});
      }
    };
    if (const auto *d = std::get_if<Disc>(&shape)) {
      circle(d->R, 1.0);
      return out;
    }
    if (const auto *a = std::get_if<Annulus>(&shape)) {
      circle(a->R, 1.0);
      circle(a->r0, -1.0);
      return out;
    }
    // staircase faces between interior and exterior cells, sampled at face midpoints
    const auto &g = cs_.grid();
    const double h = g.h();
    for (const auto &[i, j] : g.cells()) {
      const Vec2 c = g.centre(i, j);
      for (const auto &[di, dj] : GridMask::kNeighbours) {
        if (g.interior(i + di, j + dj)) continue;
        out.push_back({Vec2{c.x + 0.5 * h * di, c.y + 0.5 * h * dj}, Vec2{static_cast<double>(di), static_cast<double>(dj)}});
      }
    }
    return out;
  }

  CrossSection cs_;
  double length_;
};

class BallDomain : public Domain {
public:
  explicit BallDomain(double R) : R_(R) {
    if (!(R > 0.0)) throw DomainError("ball domain: radius must be positive");
  }
  bool contains(Vec3 x) const override { return norm(x) <= R_; }
  double distance_to_boundary(Vec3 x) const override { return std::max(0.0, R_ - norm(x)); }
  std::pair<Vec3, Vec3> bounds() const override { return {Vec3{-R_, -R_, -R_}, Vec3{R_, R_, R_}}; }
  std::string name() const override { return "ball R=" + std::to_string(R_); }
  double feature_size() const override { return R_; }

  /// Fibonacci lattice on the sphere plus both poles.
  std::vector<BoundarySample> sample_boundary(int per_face) const override {
    std::vector<BoundarySample> out;
    const int n = std::max(per_face * per_face, 8);
    const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
    for (int i = 0; i < n; ++i) {
      const double z = 1.0 - 2.0 * (i + 0.5) / n;
      const double r = std::sqrt(1.0 - z * z);
      const Vec3 u{r * std::cos(golden * i), r * std::sin(golden * i), z};
      out.push_back({R_ * u, u, WallTag::Sphere});
    }
    out.push_back({Vec3{0, 0, R_}, Vec3{0, 0, 1}, WallTag::Sphere});
    out.push_back({Vec3{0, 0, -R_}, Vec3{0, 0, -1}, WallTag::Sphere});
    return out;
  }

  std::vector<QuadraturePoint> quadrature(int order) const override {
    const auto gr = gauss_legendre(order, 0.0, R_);
    const auto gt = gauss_legendre(order, -1.0, 1.0);
    const int nphi = std::max(64, 2 * order);
    std::vector<QuadraturePoint> out;
    for (std::size_t i = 0; i < gr.nodes.size(); ++i)
      for (std::size_t j = 0; j < gt.nodes.size(); ++j)
        for (int k = 0; k < nphi; ++k) {
          const double rho = gr.nodes[i], ct = gt.nodes[j], st = std::sqrt(1.0 - ct * ct);
          const double phi = 2.0 * std::numbers::pi * (k + 0.5) / nphi;
          out.push_back({Vec3{rho * st * std::cos(phi), rho * st * std::sin(phi), rho * ct},
                         gr.weights[i] * rho * rho * gt.weights[j] * 2.0 * std::numbers::pi / nphi});
        }
    return out;
  }

private:
  double R_;
};

// ---- finite differences -------------------------------------------------------

enum class FdOp { Div, Curl, CurlCurl };

inline complex fd_div(const FieldFunction &f, Vec3 x, double h) {
  complex s = 0.0;
  for (int i = 0; i < 3; ++i) {
    Vec3 a = x, b = x;
    a[i] += h;
    b[i] -= h;
    s += (f(a)[i] - f(b)[i]) / (2.0 * h);
  }
  return s;
}

inline CVec3 fd_curl(const FieldFunction &f, Vec3 x, double h) {
  // d[i][j] = d F_j / d x_i
  complex d[3][3];
  for (int i = 0; i < 3; ++i) {
    Vec3 a = x, b = x;
    a[i] += h;
    b[i] -= h;
    const CVec3 fa = f(a), fb = f(b);
    for (int j = 0; j < 3; ++j) d[i][j] = (fa[j] - fb[j]) / (2.0 * h);
  }
  return CVec3{{d[1][2] - d[2][1], d[2][0] - d[0][2], d[0][1] - d[1][0]}};
}

/// curl curl F = grad div F - Laplacian F, second-order central differences.
inline CVec3 fd_curlcurl(const FieldFunction &f, Vec3 x, double h) {
  const CVec3 f0 = f(x);
  CVec3 plus[3], minus[3];
  for (int i = 0; i < 3; ++i) {
    Vec3 a = x, b = x;
    a[i] += h;
    b[i] -= h;
    plus[i] = f(a);
    minus[i] = f(b);
  }
  CVec3 out;
  for (int i = 0; i < 3; ++i) {
    complex gd = 0.0;  // d_i div F = sum_j d_i d_j F_j
    complex lap = 0.0; // Laplacian of F_i
    for (int j = 0; j < 3; ++j) {
      lap += (plus[j][i] - 2.0 * f0[i] + minus[j][i]) / (h * h);
      if (j == i) {
        gd += (plus[i][i] - 2.0 * f0[i] + minus[i][i]) / (h * h);
      } else {
        Vec3 pp = x, pm = x, mp = x, mm = x;
        pp[i] += h, pp[j] += h;
        pm[i] += h, pm[j] -= h;
        mp[i] -= h, mp[j] += h;
        mm[i] -= h, mm[j] -= h;
        gd += (f(pp)[j] - f(pm)[j] - f(mp)[j] + f(mm)[j]) / (4.0 * h * h);
      }
    }
    out[i] = gd - lap;
  }
  return out;
}

/// Applies the operator at a point at distance > 2 h from the boundary of the domain.
/// Div returns its scalar in component 0.
inline CVec3 fd_operator(const FieldFunction &f, FdOp op, Vec3 x, double h, const Domain *domain = nullptr) {
  if (!(h > 0.0)) throw DomainError("fd_operator: step must be positive");
  if (domain && domain->distance_to_boundary(x) <= 2.0 * h) {
    throw DomainError("fd_operator: point is within 2h of the boundary");
  }
  switch (op) {
  case FdOp::Div: return CVec3{{fd_div(f, x, h), 0.0, 0.0}};
  case FdOp::Curl: return fd_curl(f, x, h);
  default: return fd_curlcurl(f, x, h);
  }
}

// ---- Gram matrices --------------------------------------------------------------

/// L2 inner products <F_i, F_j> = integral F_i . conj(F_j).
inline Eigen::MatrixXcd gram_matrix(const std::vector<FieldFunction> &fields, const Domain &domain, int order = 32) {
  if (order < 8) throw DomainError("gram_matrix: quadrature order must be >= 8");
  const auto q = domain.quadrature(order);
  const std::size_t n = fields.size();
  // values[i][p]
  std::vector<std::vector<CVec3>> values(n);
  parallel_for(n, [&](std::size_t i) {
    values[i].resize(q.size());
    for (std::size_t p = 0; p < q.size(); ++p) values[i][p] = fields[i](q[p].x);
  });
  Eigen::MatrixXcd g(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      complex s = 0.0;
      for (std::size_t p = 0; p < q.size(); ++p) s += q[p].w * inner(values[i][p], values[j][p]);
      g(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = s;
      g(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) = std::conj(s);
    }
  return g;
}

// ---- convergence order -----------------------------------------------------------

struct ConvergenceResult {
  double order = 0.0;
  /// Errors do not decrease with h (|order| < 0.1).
  bool stagnant = false;
};

/// Least-squares slope of log(error) against log(h).
inline ConvergenceResult convergence_order(std::vector<std::pair<double, double>> levels) {
  if (levels.size() < 3) throw DomainError("convergence_order: need at least 3 levels");
  for (const auto &[h, e] : levels)
    if (!(h > 0.0) || !(e > 0.0)) throw DomainError("convergence_order: h and errors must be positive");
  std::sort(levels.begin(), levels.end());
  // errors may not grow as h shrinks (beyond round-off)
  for (std::size_t i = 1; i < levels.size(); ++i) {
    if (levels[i - 1].second > levels[i].second * (1.0 + 1e-9)) {
      throw DomainError("convergence_order: errors are not monotone in h");
    }
  }
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(levels.size());
  for (const auto &[h, e] : levels) {
    const double x = std::log(h), y = std::log(e);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  ConvergenceResult r;
  r.order = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  r.stagnant = std::abs(r.order) < 0.1;
  return r;
}

// ---- check reports ----------------------------------------------------------------

struct Offender {
  std::string mode;
  Vec3 x;
  double value = 0.0;
};

struct CheckReport {
  std::string name;
  double max_residual = 0.0;
  double tolerance = 0.0;
  bool passed = true;
  int samples = 0;
  std::vector<Offender> details;

  void finish() { passed = max_residual <= tolerance; }
};

/// Keeps the worst `keep` offenders, ordered by decreasing value then mode label.
inline void record_offender(CheckReport &r, Offender o, std::size_t keep = 5) {
  r.max_residual = std::max(r.max_residual, o.value);
  r.details.push_back(std::move(o));
  std::stable_sort(r.details.begin(), r.details.end(),
                   [](const Offender &a, const Offender &b) { return a.value > b.value; });
  if (r.details.size() > keep) r.details.resize(keep);
}

struct CheckConfig {
  int interior_points = 100;
  int boundary_per_face = 12;
  int quadrature_order = 32;
  /// Finite-difference steps, multiplied by min(1, domain feature size).
  double h_div = 1e-4;
  double h_curlcurl = 1e-3;
  double h_coupling = 1e-4;
  double tol_div = 1e-6;       ///< relative to max |F| over the interior samples
  double tol_curlcurl = 1e-4;  ///< relative to Lambda max |E|
  double tol_coupling = 1e-6;  ///< relative to k max(|E|, |H|)
  double tol_boundary = 1e-8;  ///< relative to max(1, max |F|)
  double tol_gram = 1e-6;      ///< normalized off-diagonal and diagonal-vs-norm deviation
  std::uint64_t seed = kDefaultSeed;
};

namespace detail {

inline double sup_norm(const FieldFunction &f, const std::vector<Vec3> &pts) {
  double m = 0.0;
  for (const auto &p : pts) m = std::max(m, norm(f(p)));
  return m;
}

} // namespace detail

/// Pointwise field checks (divergence, curl-curl residual, Maxwell coupling,
/// boundary conditions) over the given modes. Boundary conditions per wall:
/// conducting E x n = 0 and H . n = 0; insulating E . n = 0 and H x n = 0.
inline std::vector<CheckReport> field_checks(const std::vector<ModeSpec> &modes, const Domain &domain,
                                             const WallConfig &walls, const CheckConfig &cfg = {}) {
  const double scale = std::min(1.0, domain.feature_size());
  const double h_div = cfg.h_div * scale, h_cc = cfg.h_curlcurl * scale, h_cp = cfg.h_coupling * scale;
  const double margin = 2.0 * std::max({h_div, h_cc, h_cp}) * 1.01;
  const auto pts = domain.sample_interior(cfg.interior_points, margin, cfg.seed);
  const auto bnd = domain.sample_boundary(cfg.boundary_per_face);

  auto insulating = [&](WallTag t) {
    if (t == WallTag::Lateral || t == WallTag::Sphere) return walls.lateral == LateralWall::Insulating;
    if (walls.ends == EndWalls::Insulating) return true;
    return walls.ends == EndWalls::MixedCondIns && t == WallTag::EndL;
  };

  const char *names[] = {"div_E", "div_H", "curlcurl_E", "coupling_curlE", "coupling_curlH", "boundary_E",
                         "boundary_H"};
  constexpr int kChecks = 7;
  std::vector<std::vector<CheckReport>> per_mode(modes.size());
  parallel_for(modes.size(), [&](std::size_t mi) {
    const auto &m = modes[mi];
    auto &reps = per_mode[mi];
    reps.resize(kChecks);
    for (int c = 0; c < kChecks; ++c) reps[static_cast<std::size_t>(c)].name = names[c];
    const double e_inf = detail::sup_norm(m.E, pts), h_inf = detail::sup_norm(m.H, pts);
    const std::string lab = m.label();
    const complex ik(0.0, m.k);
    for (const auto &x : pts) {
      if (e_inf > 0.0) {
        const double v = std::abs(fd_div(m.E, x, h_div)) / e_inf;
        record_offender(reps[0], {lab, x, v});
        ++reps[0].samples;
      }
      if (h_inf > 0.0) {
        const double v = std::abs(fd_div(m.H, x, h_div)) / h_inf;
        record_offender(reps[1], {lab, x, v});
        ++reps[1].samples;
      }
      if (m.Lambda > 0.0 && e_inf > 0.0) {
        const CVec3 r = fd_curlcurl(m.E, x, h_cc) - complex(m.Lambda, 0.0) * m.E(x);
        record_offender(reps[2], {lab, x, norm(r) / (m.Lambda * e_inf)});
        ++reps[2].samples;
        const double scale = m.k * std::max(e_inf, h_inf);
        const CVec3 c1 = fd_curl(m.E, x, h_cp) - ik * m.H(x);
        const CVec3 c2 = fd_curl(m.H, x, h_cp) + ik * m.E(x);
        record_offender(reps[3], {lab, x, norm(c1) / scale});
        record_offender(reps[4], {lab, x, norm(c2) / scale});
        ++reps[3].samples;
        ++reps[4].samples;
      }
    }
    const double se = std::max(1.0, e_inf), sh = std::max(1.0, h_inf);
    for (const auto &b : bnd) {
      const CVec3 e = m.E(b.x), h = m.H(b.x);
      double ve, vh;
      if (insulating(b.wall)) {
        ve = std::abs(dot(e, b.normal)) / se;
        vh = norm(cross(h, b.normal)) / sh;
      } else {
        ve = norm(cross(e, b.normal)) / se;
        vh = std::abs(dot(h, b.normal)) / sh;
      }
      record_offender(reps[5], {lab, b.x, ve});
      record_offender(reps[6], {lab, b.x, vh});
      ++reps[5].samples;
      ++reps[6].samples;
    }
  });

  const double tols[] = {cfg.tol_div, cfg.tol_div, cfg.tol_curlcurl, cfg.tol_coupling, cfg.tol_coupling,
                         cfg.tol_boundary, cfg.tol_boundary};
  std::vector<CheckReport> out(kChecks);
  for (int c = 0; c < kChecks; ++c) {
    auto &r = out[static_cast<std::size_t>(c)];
    r.name = names[c];
    r.tolerance = tols[c];
    for (const auto &reps : per_mode) {
      const auto &src = reps[static_cast<std::size_t>(c)];
      r.samples += src.samples;
      for (const auto &o : src.details) record_offender(r, o);
    }
    r.finish();
  }
  return out;
}

/// Orthogonality of the E fields of the given modes (zero fields skipped):
/// normalized off-diagonal Gram entries and the deviation of the diagonal
/// from the reported norms.
inline CheckReport gram_check(const std::vector<ModeSpec> &modes, const Domain &domain, const CheckConfig &cfg = {}) {
  CheckReport r;
  r.name = "gram_E";
  r.tolerance = cfg.tol_gram;
  std::vector<FieldFunction> fields;
  std::vector<const ModeSpec *> used;
  for (const auto &m : modes) {
    if (m.norm_E == 0.0) continue;
    fields.push_back(m.E);
    used.push_back(&m);
  }
  if (fields.empty()) {
    r.finish();
    return r;
  }
  const auto g = gram_matrix(fields, domain, cfg.quadrature_order);
  const auto n = g.rows();
  for (Eigen::Index i = 0; i < n; ++i) {
    const double di = std::sqrt(std::abs(g(i, i).real()));
    const double expect = used[static_cast<std::size_t>(i)]->norm_E;
    record_offender(r, {used[static_cast<std::size_t>(i)]->label(), {}, std::abs(di - expect) / expect});
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const double dj = std::sqrt(std::abs(g(j, j).real()));
      const double v = std::abs(g(i, j)) / (di * dj);
      record_offender(r, {used[static_cast<std::size_t>(i)]->label() + " x " + used[static_cast<std::size_t>(j)]->label(),
                          {}, v});
    }
  }
  r.samples = static_cast<int>(n * (n + 1) / 2);
  r.finish();
  return r;
}

/// Every contributor of every entry lies within tol * max(1, Lambda) of the entry.
inline CheckReport multiplicity_check(const SpectrumTable &table, double tol = 1e-9) {
  CheckReport r;
  r.name = "multiplicity";
  r.tolerance = tol;
  for (const auto &e : table.entries) {
    for (const auto &c : e.contributors) {
      const double v = std::abs(c.Lambda - e.Lambda) / std::max(1.0, std::abs(e.Lambda));
      record_offender(r, {c.family + "/" + c.indices, {}, v});
      ++r.samples;
    }
  }
  r.finish();
  return r;
}

/// Number of Maxwell eigenvalues (with multiplicity) <= lambda_max on the box
/// (0,a)x(0,b)x(0,c), from the scalar triples: once when exactly one index
/// is zero, twice when all are positive.
inline std::size_t cuboid_scalar_count(double a, double b, double c, double lambda_max) {
  const double pa = std::numbers::pi / a, pb = std::numbers::pi / b, pc = std::numbers::pi / c;
  const int na = static_cast<int>(std::sqrt(lambda_max) / pa) + 1;
  const int nb = static_cast<int>(std::sqrt(lambda_max) / pb) + 1;
  const int nc = static_cast<int>(std::sqrt(lambda_max) / pc) + 1;
  std::size_t count = 0;
  for (int i = 0; i <= na; ++i)
    for (int j = 0; j <= nb; ++j)
      for (int k = 0; k <= nc; ++k) {
        const int zeros = (i == 0) + (j == 0) + (k == 0);
        if (zeros > 1) continue;
        const double ti = i * pa, tj = j * pb, tk = k * pc;
        if (ti * ti + tj * tj + tk * tk > lambda_max) continue;
        count += zeros == 1 ? 1 : 2;
      }
  return count;
}

} // namespace cavity
