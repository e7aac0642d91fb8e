#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <memory>
#include <numbers>
#include <string>
#include <tuple>
#include <variant>
#include <vector>

#include "errors.hpp"
#include "grid.hpp"
#include "linalg.hpp"
#include "rootfind.hpp"
#include "specfun.hpp"
#include "vec.hpp"

namespace cavity {

/// [0, l1] x [0, l2]
struct Rectangle {
  double l1 = 1.0;
  double l2 = 1.0;
};

/// Disc of radius R centred at the origin.
struct Disc {
  double R = 1.0;
};

/// r0 < r < R centred at the origin.
struct Annulus {
  double r0 = 0.5;
  double R = 1.0;
};

class CrossSection {
public:
  using Shape = std::variant<Rectangle, Disc, Annulus, std::shared_ptr<const GridMask>>;

  CrossSection(Rectangle r) : shape_(r) {
    if (!(r.l1 > 0.0 && r.l2 > 0.0)) throw DomainError("rectangle: side lengths must be positive");
  }
  CrossSection(Disc d) : shape_(d) {
    if (!(d.R > 0.0)) throw DomainError("disc: radius must be positive");
  }
  CrossSection(Annulus a) : shape_(a) {
    if (!(a.r0 > 0.0 && a.R > a.r0)) throw DomainError("annulus: need 0 < r0 < R");
  }
  CrossSection(GridMask g) : shape_(std::make_shared<const GridMask>(std::move(g))) {}

  const Shape &shape() const { return shape_; }
  bool is_grid() const { return std::holds_alternative<std::shared_ptr<const GridMask>>(shape_); }
  const GridMask &grid() const { return *std::get<std::shared_ptr<const GridMask>>(shape_); }
  std::shared_ptr<const GridMask> grid_ptr() const { return std::get<std::shared_ptr<const GridMask>>(shape_); }

  /// Number of connected boundary components.
  int D() const {
    if (std::holds_alternative<Annulus>(shape_)) return 2;
    if (is_grid()) return grid().D();
    return 1;
  }

  double area() const {
    return std::visit(
        [](const auto &s) -> double {
          using T = std::decay_t<decltype(s)>;
          if constexpr (std::is_same_v<T, Rectangle>) return s.l1 * s.l2;
          else if constexpr (std::is_same_v<T, Disc>) return std::numbers::pi * s.R * s.R;
          else if constexpr (std::is_same_v<T, Annulus>) return std::numbers::pi * (s.R * s.R - s.r0 * s.r0);
          else return s->area();
        },
        shape_);
  }

  /// Point in the closure of the cross section.
  bool contains(Vec2 p, double tol = 1e-12) const {
    return std::visit(
        [&](const auto &s) -> bool {
          using T = std::decay_t<decltype(s)>;
          if constexpr (std::is_same_v<T, Rectangle>)
            return p.x >= -tol && p.y >= -tol && p.x <= s.l1 + tol && p.y <= s.l2 + tol;
          else if constexpr (std::is_same_v<T, Disc>) return std::hypot(p.x, p.y) <= s.R + tol;
          else if constexpr (std::is_same_v<T, Annulus>) {
            const double r = std::hypot(p.x, p.y);
            return r >= s.r0 - tol && r <= s.R + tol;
          } else
            return s->contains(p, tol);
        },
        shape_);
  }

  /// Bounding box (xmin, ymin, xmax, ymax).
  std::array<double, 4> bounds() const {
    return std::visit(
        [](const auto &s) -> std::array<double, 4> {
          using T = std::decay_t<decltype(s)>;
          if constexpr (std::is_same_v<T, Rectangle>) return {0.0, 0.0, s.l1, s.l2};
          else if constexpr (std::is_same_v<T, Disc>) return {-s.R, -s.R, s.R, s.R};
          else if constexpr (std::is_same_v<T, Annulus>) return {-s.R, -s.R, s.R, s.R};
          else
            return {s->origin().x, s->origin().y, s->origin().x + s->nx() * s->h(),
                    s->origin().y + s->ny() * s->h()};
        },
        shape_);
  }

  std::string describe() const {
    char buf[160];
    std::visit(
        [&](const auto &s) {
          using T = std::decay_t<decltype(s)>;
          if constexpr (std::is_same_v<T, Rectangle>) std::snprintf(buf, sizeof buf, "rectangle %.17g x %.17g", s.l1, s.l2);
          else if constexpr (std::is_same_v<T, Disc>) std::snprintf(buf, sizeof buf, "disc R=%.17g", s.R);
          else if constexpr (std::is_same_v<T, Annulus>)
            std::snprintf(buf, sizeof buf, "annulus r0=%.17g R=%.17g", s.r0, s.R);
          else
            std::snprintf(buf, sizeof buf, "grid %dx%d h=%.17g D=%d", s->nx(), s->ny(), s->h(), s->D());
        },
        shape_);
    return buf;
  }

private:
  Shape shape_;
};

enum class Parity { None, Cos, Sin };

/// Backend-specific index of a transverse eigenpair.
struct TransverseIndex {
  enum class Kind { Rectangle, Polar, Grid } kind = Kind::Grid;
  int k1 = 0, k2 = 0;            ///< rectangle
  int n = 0, p = 0;              ///< disc / annulus: angular order, radial count (p = 0: constant)
  Parity parity = Parity::None;  ///< disc / annulus
  int j = 0;                     ///< grid: position in the spectrum (Neumann constant is 0)

  std::string label() const {
    switch (kind) {
    case Kind::Rectangle: return "k1=" + std::to_string(k1) + "/k2=" + std::to_string(k2);
    case Kind::Polar: {
      std::string s = "n=" + std::to_string(n) + "/p=" + std::to_string(p);
      if (parity == Parity::Cos) s += "/c";
      if (parity == Parity::Sin) s += "/s";
      return s;
    }
    default: return "j=" + std::to_string(j);
    }
  }

  auto key() const { return std::make_tuple(k1, k2, n, p, static_cast<int>(parity), j); }
};

/// v, grad v and Laplacian of a transverse function at one point.
struct TransverseValue {
  double v = 0.0;
  double dx = 0.0;
  double dy = 0.0;
  double lap = 0.0;
};

using TransverseEvaluator = std::function<TransverseValue(Vec2)>;

struct TransverseEigenpair {
  double lambda = 0.0;
  BoundaryKind bc = BoundaryKind::Dirichlet;
  TransverseIndex index;
  TransverseEvaluator eval;

  TransverseValue evaluate(Vec2 p) const { return eval(p); }
};

struct TopologicalPotential {
  int d = 1;
  TransverseEvaluator eval;
  /// integral of |grad v|^2 over the cross section
  double gradient_norm_sq = 0.0;

  TransverseValue evaluate(Vec2 p) const { return eval(p); }
};

struct TransverseOptions {
  EigenOptions eigen;
  /// Relative tolerance defining a degenerate cluster of grid eigenvalues.
  double cluster_tol = 1e-8;
  /// Upper bound on the number of grid eigenpairs computed when covering a bound.
  int max_grid_count = 4000;
};

namespace detail {

inline bool transverse_less(const TransverseEigenpair &a, const TransverseEigenpair &b) {
  if (a.lambda != b.lambda) return a.lambda < b.lambda;
  return a.index.key() < b.index.key();
}

// ---- rectangle ----------------------------------------------------------

inline std::vector<TransverseEigenpair> rectangle_below(const Rectangle &r, BoundaryKind bc, double lambda_max) {
  std::vector<TransverseEigenpair> out;
  const double a = std::numbers::pi / r.l1, b = std::numbers::pi / r.l2;
  const int lo = bc == BoundaryKind::Dirichlet ? 1 : 0;
  const int m1 = static_cast<int>(std::floor(std::sqrt(std::max(lambda_max, 0.0)) / a)) + 1;
  const int m2 = static_cast<int>(std::floor(std::sqrt(std::max(lambda_max, 0.0)) / b)) + 1;
  for (int k1 = lo; k1 <= m1; ++k1) {
    for (int k2 = lo; k2 <= m2; ++k2) {
      // (k * (pi/l))^2 keeps integer results exact when l = pi.
      const double t1 = k1 * a, t2 = k2 * b;
      const double lambda = t1 * t1 + t2 * t2;
      if (lambda > lambda_max) continue;
      TransverseEigenpair e;
      e.lambda = lambda;
      e.bc = bc;
      e.index.kind = TransverseIndex::Kind::Rectangle;
      e.index.k1 = k1;
      e.index.k2 = k2;
      if (bc == BoundaryKind::Dirichlet) {
        const double c = 2.0 / std::sqrt(r.l1 * r.l2);
        e.eval = [=](Vec2 p) {
          const double s1 = std::sin(t1 * p.x), c1 = std::cos(t1 * p.x);
          const double s2 = std::sin(t2 * p.y), c2 = std::cos(t2 * p.y);
          const double v = c * s1 * s2;
          return TransverseValue{v, c * t1 * c1 * s2, c * t2 * s1 * c2, -lambda * v};
        };
      } else {
        const double c = std::sqrt((k1 == 0 ? 1.0 : 2.0) / r.l1) * std::sqrt((k2 == 0 ? 1.0 : 2.0) / r.l2);
        e.eval = [=](Vec2 p) {
          const double s1 = std::sin(t1 * p.x), c1 = std::cos(t1 * p.x);
          const double s2 = std::sin(t2 * p.y), c2 = std::cos(t2 * p.y);
          const double v = c * c1 * c2;
          return TransverseValue{v, -c * t1 * s1 * c2, -c * t2 * c1 * s2, -lambda * v};
        };
      }
      out.push_back(std::move(e));
    }
  }
  return out;
}

// ---- disc and annulus ---------------------------------------------------

/// Radial profile h(r) = a J_n(kr) + b Y_n(kr) (b = 0 for the disc).
struct RadialProfile {
  int n;
  double k;
  double a;
  double b;

  /// value and d/dr
  std::pair<double, double> operator()(double r) const {
    const auto c = cylinder_values(n, k * r, b != 0.0);
    return {a * c.j + b * c.y, k * (a * c.jp + b * c.yp)};
  }

  /// integral of r h(r)^2 from 0 to r (indefinite Lommel form, r > 0).
  double lommel(double r) const {
    const double x = k * r;
    const auto c = cylinder_values(n, x, b != 0.0);
    const double f = a * c.j + b * c.y, fp = a * c.jp + b * c.yp;
    return 0.5 * r * r * (fp * fp + (1.0 - static_cast<double>(n) * n / (x * x)) * f * f);
  }
};

inline TransverseEvaluator polar_evaluator(RadialProfile prof, double norm, Parity parity, double lambda) {
  const int n = prof.n;
  return [=](Vec2 p) {
    const double r = std::hypot(p.x, p.y);
    TransverseValue out;
    if (r < 1e-14) {
      // Only the disc reaches r = 0; J_n(kr) ~ (kr/2)^n / n!.
      if (n == 0) out.v = norm * prof.a;
      if (n == 1) {
        const double g = norm * prof.a * prof.k / 2.0;
        if (parity == Parity::Cos) out.dx = g;
        else out.dy = g;
      }
      out.lap = -lambda * out.v;
      return out;
    }
    const double phi = std::atan2(p.y, p.x);
    const auto [h, dh] = prof(r);
    double ang = 1.0, dang = 0.0;
    if (parity == Parity::Cos) {
      ang = std::cos(n * phi);
      dang = -n * std::sin(n * phi);
    } else if (parity == Parity::Sin) {
      ang = std::sin(n * phi);
      dang = n * std::cos(n * phi);
    }
    const double dr = norm * dh * ang;
    const double dphi_over_r = norm * h * dang / r;
    const double cp = p.x / r, sp = p.y / r;
    out.v = norm * h * ang;
    out.dx = cp * dr - sp * dphi_over_r;
    out.dy = sp * dr + cp * dphi_over_r;
    out.lap = -lambda * out.v;
    return out;
  };
}

inline void emit_polar(std::vector<TransverseEigenpair> &out, BoundaryKind bc, int n, int p, double k,
                       const RadialProfile &prof, double radial_integral) {
  const double lambda = k * k;
  // angular integral: 2 pi for n = 0, pi for cos / sin
  const std::vector<Parity> parities = n == 0 ? std::vector<Parity>{Parity::None}
                                               : std::vector<Parity>{Parity::Cos, Parity::Sin};
  const double ang = n == 0 ? 2.0 * std::numbers::pi : std::numbers::pi;
  const double norm = 1.0 / std::sqrt(ang * radial_integral);
  for (Parity par : parities) {
    TransverseEigenpair e;
    e.lambda = lambda;
    e.bc = bc;
    e.index.kind = TransverseIndex::Kind::Polar;
    e.index.n = n;
    e.index.p = p;
    e.index.parity = par;
    e.eval = polar_evaluator(prof, norm, par, lambda);
    out.push_back(std::move(e));
  }
}

inline TransverseEigenpair polar_constant(BoundaryKind bc, double area) {
  TransverseEigenpair e;
  e.lambda = 0.0;
  e.bc = bc;
  e.index.kind = TransverseIndex::Kind::Polar;
  const double c = 1.0 / std::sqrt(area);
  e.eval = [c](Vec2) { return TransverseValue{c, 0.0, 0.0, 0.0}; };
  return e;
}

inline std::vector<TransverseEigenpair> disc_below(const Disc &d, BoundaryKind bc, double lambda_max) {
  std::vector<TransverseEigenpair> out;
  if (lambda_max < 0.0) return out;
  if (bc == BoundaryKind::Neumann) out.push_back(polar_constant(bc, std::numbers::pi * d.R * d.R));
  const double xmax = std::sqrt(lambda_max) * d.R;
  for (int n = 0; n <= static_cast<int>(xmax) + 1; ++n) {
    const auto zeros = j_zeros_below(n, xmax, bc == BoundaryKind::Neumann);
    for (std::size_t p = 0; p < zeros.size(); ++p) {
      const double k = zeros[p] / d.R;
      if (k * k > lambda_max) continue;
      const RadialProfile prof{n, k, 1.0, 0.0};
      emit_polar(out, bc, n, static_cast<int>(p) + 1, k, prof, prof.lommel(d.R));
    }
  }
  return out;
}

inline std::vector<TransverseEigenpair> annulus_below(const Annulus &an, BoundaryKind bc, double lambda_max) {
  std::vector<TransverseEigenpair> out;
  if (lambda_max < 0.0) return out;
  if (bc == BoundaryKind::Neumann) {
    out.push_back(polar_constant(bc, std::numbers::pi * (an.R * an.R - an.r0 * an.r0)));
  }
  const double kmax = std::sqrt(lambda_max);
  for (int n = 0; 0.9 * n / an.R < kmax; ++n) {
    const auto zeros = annulus_zeros_below(bc, n, an.r0, an.R, kmax);
    for (std::size_t p = 0; p < zeros.size(); ++p) {
      const double k = zeros[p];
      if (k * k > lambda_max) continue;
      const auto c0 = cylinder_values(n, k * an.r0);
      // h vanishes (Dirichlet) or has zero slope (Neumann) at r0.
      const RadialProfile prof = bc == BoundaryKind::Dirichlet ? RadialProfile{n, k, c0.y, -c0.j}
                                                               : RadialProfile{n, k, c0.yp, -c0.jp};
      emit_polar(out, bc, n, static_cast<int>(p) + 1, k, prof, prof.lommel(an.R) - prof.lommel(an.r0));
    }
  }
  return out;
}

// ---- grid ---------------------------------------------------------------

inline std::vector<TransverseEigenpair> grid_spectrum(const std::shared_ptr<const GridMask> &mask, BoundaryKind bc,
                                                      int count, const TransverseOptions &opt) {
  const SparseMatrix a = mask->laplacian(bc == BoundaryKind::Dirichlet);
  auto res = smallest_eigenpairs(a, count, opt.eigen);
  canonicalize_clusters(res.values, res.vectors, opt.cluster_tol);
  const double h = mask->h();
  std::vector<TransverseEigenpair> out;
  for (int c = 0; c < res.values.size(); ++c) {
    TransverseEigenpair e;
    // The Neumann constant has eigenvalue 0 up to round-off.
    e.lambda = std::max(0.0, res.values[c]);
    if (bc == BoundaryKind::Neumann && c == 0) e.lambda = 0.0;
    e.bc = bc;
    e.index.kind = TransverseIndex::Kind::Grid;
    e.index.j = bc == BoundaryKind::Dirichlet ? c + 1 : c;
    std::vector<double> vals(static_cast<std::size_t>(res.vectors.rows()));
    for (Eigen::Index i = 0; i < res.vectors.rows(); ++i) vals[static_cast<std::size_t>(i)] = res.vectors(i, c) / h;
    const auto fn = std::make_shared<GridFunction>(
        mask, std::move(vals),
        bc == BoundaryKind::Dirichlet ? GridFunction::Ghost::Dirichlet : GridFunction::Ghost::Neumann);
    const double lambda = e.lambda;
    e.eval = [fn, lambda](Vec2 p) {
      const auto s = fn->evaluate(p);
      return TransverseValue{s.v, s.dx, s.dy, -lambda * s.v};
    };
    out.push_back(std::move(e));
  }
  return out;
}

inline std::vector<TransverseEigenpair> analytic_below(const CrossSection &cs, BoundaryKind bc, double lambda_max) {
  std::vector<TransverseEigenpair> out;
  if (const auto *r = std::get_if<Rectangle>(&cs.shape())) out = rectangle_below(*r, bc, lambda_max);
  else if (const auto *d = std::get_if<Disc>(&cs.shape())) out = disc_below(*d, bc, lambda_max);
  else if (const auto *a = std::get_if<Annulus>(&cs.shape())) out = annulus_below(*a, bc, lambda_max);
  std::sort(out.begin(), out.end(), transverse_less);
  return out;
}

} // namespace detail

/// All eigenpairs of -Delta on the cross section with lambda <= lambda_max, sorted.
inline std::vector<TransverseEigenpair> transverse_spectrum_below(const CrossSection &cs, BoundaryKind bc,
                                                                  double lambda_max,
                                                                  const TransverseOptions &opt = {}) {
  if (!cs.is_grid()) return detail::analytic_below(cs, bc, lambda_max);
  const auto mask = cs.grid_ptr();
  const int n = mask->unknowns();
  // Weyl estimate for the starting count, doubled until the bound is passed.
  int count = static_cast<int>(1.5 * cs.area() * std::max(lambda_max, 0.0) / (4.0 * std::numbers::pi)) + 8;
  while (true) {
    count = std::min(count, n);
    auto eig = detail::grid_spectrum(mask, bc, count, opt);
    if (eig.back().lambda > lambda_max || count == n) {
      std::erase_if(eig, [&](const TransverseEigenpair &e) { return e.lambda > lambda_max; });
      return eig;
    }
    if (count >= opt.max_grid_count) {
      throw TruncationError("transverse spectrum: " + std::to_string(count) +
                            " grid eigenpairs do not reach lambda = " + std::to_string(lambda_max));
    }
    count = std::min(2 * count, opt.max_grid_count);
  }
}

/// The `count` smallest eigenpairs.
inline std::vector<TransverseEigenpair> transverse_spectrum(const CrossSection &cs, BoundaryKind bc, int count,
                                                            const TransverseOptions &opt = {}) {
  if (count < 1) throw DomainError("transverse spectrum: count must be >= 1");
  if (cs.is_grid()) {
    if (count > cs.grid().unknowns()) {
      throw TruncationError("transverse spectrum: grid has only " + std::to_string(cs.grid().unknowns()) +
                            " unknowns");
    }
    return detail::grid_spectrum(cs.grid_ptr(), bc, count, opt);
  }
  double bound = 4.0 * std::numbers::pi * (count + 4) / cs.area() * 1.5 + 1.0;
  for (int attempt = 0; attempt < 60; ++attempt, bound *= 2.0) {
    auto eig = detail::analytic_below(cs, bc, bound);
    if (static_cast<int>(eig.size()) >= count) {
      eig.resize(static_cast<std::size_t>(count));
      return eig;
    }
  }
  throw TruncationError("transverse spectrum: could not reach " + std::to_string(count) + " eigenpairs");
}

inline std::vector<TransverseEigenpair> dirichlet_spectrum(const CrossSection &cs, int count,
                                                           const TransverseOptions &opt = {}) {
  return transverse_spectrum(cs, BoundaryKind::Dirichlet, count, opt);
}

inline std::vector<TransverseEigenpair> neumann_spectrum(const CrossSection &cs, int count,
                                                         const TransverseOptions &opt = {}) {
  return transverse_spectrum(cs, BoundaryKind::Neumann, count, opt);
}

/// Harmonic potentials with constant trace on each boundary component, one
/// per hole. The annulus uses log r; grid masks solve the discrete Laplace
/// equation with trace 1 on hole d and 0 on every other component.
inline std::vector<TopologicalPotential> topological_potentials(const CrossSection &cs) {
  std::vector<TopologicalPotential> out;
  if (cs.D() == 1) return out;
  if (const auto *an = std::get_if<Annulus>(&cs.shape())) {
    TopologicalPotential t;
    t.d = 1;
    t.gradient_norm_sq = 2.0 * std::numbers::pi * std::log(an->R / an->r0);
    t.eval = [](Vec2 p) {
      const double r2 = p.x * p.x + p.y * p.y;
      return TransverseValue{0.5 * std::log(r2), p.x / r2, p.y / r2, 0.0};
    };
    out.push_back(std::move(t));
    return out;
  }
  const auto mask = cs.grid_ptr();
  const SparseMatrix a = mask->laplacian(true);
  Eigen::SimplicialLDLT<SparseMatrix> ldlt(a);
  if (ldlt.info() != Eigen::Success) throw SingularError("topological potentials: Laplace system is singular");
  const double w = 1.0 / (mask->h() * mask->h());
  for (int d = 1; d < cs.D(); ++d) {
    // Faces towards hole d carry the ghost 2*1 - u, which moves 2/h^2 to the right-hand side.
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(mask->unknowns());
    for (int u = 0; u < mask->unknowns(); ++u) {
      const auto [i, j] = mask->cells()[static_cast<std::size_t>(u)];
      for (const auto &[di, dj] : GridMask::kNeighbours) {
        if (mask->unknown(i + di, j + dj) < 0 && mask->component(i + di, j + dj) == d) rhs[u] += 2.0 * w;
      }
    }
    const Eigen::VectorXd sol = ldlt.solve(rhs);
    if (ldlt.info() != Eigen::Success || !sol.allFinite())
      throw SingularError("topological potentials: solve failed");
    std::vector<double> comp(static_cast<std::size_t>(cs.D()), 0.0);
    comp[static_cast<std::size_t>(d)] = 1.0;
    const auto fn = std::make_shared<GridFunction>(mask, std::vector<double>(sol.data(), sol.data() + sol.size()),
                                                   GridFunction::Ghost::Dirichlet, comp);
    TopologicalPotential t;
    t.d = d;
    // Discrete Dirichlet energy u^T A u h^2 summed face by face.
    double energy = 0.0;
    for (int u = 0; u < mask->unknowns(); ++u) {
      const auto [i, j] = mask->cells()[static_cast<std::size_t>(u)];
      for (const auto &[di, dj] : GridMask::kNeighbours) {
        const double diff = fn->cell_value(i + di, j + dj) - sol[u];
        // Interior faces are visited twice; a boundary face with ghost 2g - u
        // contributes 2 (u - g)^2 = diff^2 / 2 once.
        energy += 0.5 * diff * diff;
      }
    }
    t.gradient_norm_sq = energy;
    t.eval = [fn](Vec2 p) {
      const auto s = fn->evaluate(p);
      return TransverseValue{s.v, s.dx, s.dy, 0.0};
    };
    out.push_back(std::move(t));
  }
  return out;
}

} // namespace cavity
