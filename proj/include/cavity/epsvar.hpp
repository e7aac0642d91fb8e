#pragma once

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <istream>
#include <limits>
#include <memory>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "errors.hpp"
#include "grid.hpp"
#include "linalg.hpp"
#include "mode.hpp"
#include "rootfind.hpp"
#include "transverse.hpp"
#include "vec.hpp"

namespace cavity {

/// Relative permittivity eps(x_perp) >= 1, either per grid cell or as a function.
class PermittivityMap {
public:
  static PermittivityMap constant(double value) {
    return from_function([value](Vec2) { return value; });
  }

  static PermittivityMap from_function(std::function<double(Vec2)> fn) {
    PermittivityMap p;
    p.fn_ = std::move(fn);
    return p;
  }

  /// Row-major cell values with j = 0 at the bottom.
  static PermittivityMap from_cells(int nx, int ny, std::vector<double> values) {
    if (nx < 1 || ny < 1 || values.size() != static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny)) {
      throw FormatError("permittivity: cell array does not match its dimensions");
    }
    for (double v : values) check_value(v);
    PermittivityMap p;
    p.nx_ = nx;
    p.ny_ = ny;
    p.cells_ = std::move(values);
    return p;
  }

  /// "nx ny" followed by ny rows of nx reals, top row first (same layout as mask files).
  static PermittivityMap parse(std::istream &in) {
    int nx = 0, ny = 0;
    if (!(in >> nx >> ny) || nx < 1 || ny < 1) throw FormatError("permittivity: bad header, expected 'nx ny'");
    std::vector<double> v(static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny));
    for (int row = 0; row < ny; ++row) {
      const int j = ny - 1 - row;
      for (int i = 0; i < nx; ++i) {
        double x;
        if (!(in >> x)) throw FormatError("permittivity: expected " + std::to_string(nx * ny) + " values");
        v[static_cast<std::size_t>(j * nx + i)] = x;
      }
    }
    std::string extra;
    if (in >> extra) throw FormatError("permittivity: trailing data '" + extra + "'");
    return from_cells(nx, ny, std::move(v));
  }

  static PermittivityMap load(const std::string &path) {
    std::ifstream f(path);
    if (!f) throw FormatError("permittivity: cannot open '" + path + "'");
    return parse(f);
  }

  bool is_cellwise() const { return !fn_; }

  /// eps on the interior cells of the mask, in unknown order.
  std::vector<double> on_mask(const GridMask &mask) const {
    std::vector<double> out;
    out.reserve(mask.cells().size());
    if (fn_) {
      for (const auto &[i, j] : mask.cells()) out.push_back(check_value(fn_(mask.centre(i, j))));
      return out;
    }
    if (nx_ != mask.nx() || ny_ != mask.ny()) {
      throw FormatError("permittivity: " + std::to_string(nx_) + "x" + std::to_string(ny_) +
                        " values do not align with the " + std::to_string(mask.nx()) + "x" +
                        std::to_string(mask.ny()) + " mask");
    }
    for (const auto &[i, j] : mask.cells()) out.push_back(cells_[static_cast<std::size_t>(j * nx_ + i)]);
    return out;
  }

private:
  static double check_value(double v) {
    if (!std::isfinite(v) || v < 1.0) throw DomainError("permittivity: values must be finite and >= 1");
    return v;
  }

  std::function<double(Vec2)> fn_;
  int nx_ = 0, ny_ = 0;
  std::vector<double> cells_;
};

/// Staggered discretization on a cell mask: normal components of v_perp on
/// interior faces (faces on the boundary carry v.n = 0 and are eliminated),
/// v3 at cell centres, curl at nodes whose four cells are all interior.
struct ReducedGrid {
  std::shared_ptr<const GridMask> mask;
  std::vector<double> eps; ///< per cell
  int nx_faces = 0;        ///< faces between (c, r) and (c+1, r)
  int ny_faces = 0;        ///< faces between (c, r) and (c, r+1)
  int ncells = 0;
  int nnodes = 0;
  /// Lattice index -> unknown (or -1). x faces: (nx+1) x ny with a = c+1, b = r.
  /// y faces: nx x (ny+1) with a = c, b = r+1. Nodes: (nx+1) x (ny+1).
  std::vector<int> xface_id, yface_id, node_id;
  SparseMatrix C; ///< nodes x faces, curl_perp
  SparseMatrix G; ///< faces x cells, gradient
  SparseMatrix D; ///< cells x faces, divergence (= -G^T)
  Eigen::VectorXd w_node, w_face, w_cell; ///< averaged 1/eps

  int nfaces() const { return nx_faces + ny_faces; }
  double h() const { return mask->h(); }

  int xface(int a, int b) const {
    const int nx = mask->nx(), ny = mask->ny();
    if (a < 0 || b < 0 || a > nx || b >= ny) return -1;
    return xface_id[static_cast<std::size_t>(b * (nx + 1) + a)];
  }
  int yface(int a, int b) const {
    const int nx = mask->nx(), ny = mask->ny();
    if (a < 0 || b < 0 || a >= nx || b > ny) return -1;
    return yface_id[static_cast<std::size_t>(b * nx + a)];
  }
  int node(int a, int b) const {
    const int nx = mask->nx(), ny = mask->ny();
    if (a < 0 || b < 0 || a > nx || b > ny) return -1;
    return node_id[static_cast<std::size_t>(b * (nx + 1) + a)];
  }
};

inline std::shared_ptr<const ReducedGrid> make_reduced_grid(std::shared_ptr<const GridMask> mask,
                                                            const PermittivityMap &eps) {
  auto g = std::make_shared<ReducedGrid>();
  g->mask = mask;
  g->eps = eps.on_mask(*mask);
  const int nx = mask->nx(), ny = mask->ny();
  const double h = mask->h();
  g->ncells = mask->unknowns();
  g->xface_id.assign(static_cast<std::size_t>((nx + 1) * ny), -1);
  g->yface_id.assign(static_cast<std::size_t>(nx * (ny + 1)), -1);
  g->node_id.assign(static_cast<std::size_t>((nx + 1) * (ny + 1)), -1);
  for (int r = 0; r < ny; ++r)
    for (int c = 0; c + 1 < nx; ++c)
      if (mask->interior(c, r) && mask->interior(c + 1, r))
        g->xface_id[static_cast<std::size_t>(r * (nx + 1) + c + 1)] = g->nx_faces++;
  for (int r = 0; r + 1 < ny; ++r)
    for (int c = 0; c < nx; ++c)
      if (mask->interior(c, r) && mask->interior(c, r + 1))
        g->yface_id[static_cast<std::size_t>((r + 1) * nx + c)] = g->nx_faces + g->ny_faces++;
  for (int b = 1; b < ny; ++b)
    for (int a = 1; a < nx; ++a)
      if (mask->interior(a - 1, b - 1) && mask->interior(a, b - 1) && mask->interior(a - 1, b) && mask->interior(a, b))
        g->node_id[static_cast<std::size_t>(b * (nx + 1) + a)] = g->nnodes++;

  auto inv_eps = [&](int c, int r) { return 1.0 / g->eps[static_cast<std::size_t>(mask->unknown(c, r))]; };
  const int nf = g->nfaces();
  g->w_face.resize(nf);
  g->w_cell.resize(g->ncells);
  g->w_node.resize(g->nnodes);
  for (int u = 0; u < g->ncells; ++u) g->w_cell[u] = 1.0 / g->eps[static_cast<std::size_t>(u)];

  std::vector<Eigen::Triplet<double>> tg, tc;
  for (int r = 0; r < ny; ++r)
    for (int c = 0; c < nx; ++c) {
      if (const int f = g->xface(c + 1, r); f >= 0) {
        tg.emplace_back(f, mask->unknown(c + 1, r), 1.0 / h);
        tg.emplace_back(f, mask->unknown(c, r), -1.0 / h);
        g->w_face[f] = 0.5 * (inv_eps(c, r) + inv_eps(c + 1, r));
      }
      if (const int f = g->yface(c, r + 1); f >= 0) {
        tg.emplace_back(f, mask->unknown(c, r + 1), 1.0 / h);
        tg.emplace_back(f, mask->unknown(c, r), -1.0 / h);
        g->w_face[f] = 0.5 * (inv_eps(c, r) + inv_eps(c, r + 1));
      }
    }
  for (int b = 1; b < ny; ++b)
    for (int a = 1; a < nx; ++a) {
      const int n = g->node(a, b);
      if (n < 0) continue;
      // d_x v_y - d_y v_x around the node
      tc.emplace_back(n, g->yface(a, b), 1.0 / h);
      tc.emplace_back(n, g->yface(a - 1, b), -1.0 / h);
      tc.emplace_back(n, g->xface(a, b), -1.0 / h);
      tc.emplace_back(n, g->xface(a, b - 1), 1.0 / h);
      g->w_node[n] = 0.25 * (inv_eps(a - 1, b - 1) + inv_eps(a, b - 1) + inv_eps(a - 1, b) + inv_eps(a, b));
    }
  g->G.resize(nf, g->ncells);
  g->G.setFromTriplets(tg.begin(), tg.end());
  g->C.resize(g->nnodes, nf);
  g->C.setFromTriplets(tc.begin(), tc.end());
  g->D = SparseMatrix(-SparseMatrix(g->G.transpose()));
  return g;
}

namespace detail {

inline SparseMatrix diag_matrix(const Eigen::VectorXd &d) {
  SparseMatrix m(d.size(), d.size());
  std::vector<Eigen::Triplet<double>> t;
  for (Eigen::Index i = 0; i < d.size(); ++i) t.emplace_back(static_cast<int>(i), static_cast<int>(i), d[i]);
  m.setFromTriplets(t.begin(), t.end());
  return m;
}

inline SparseMatrix identity_matrix(int n) { return diag_matrix(Eigen::VectorXd::Ones(n)); }

/// Horizontal block concatenation [a b].
inline SparseMatrix hstack(const SparseMatrix &a, const SparseMatrix &b) {
  SparseMatrix out(a.rows(), a.cols() + b.cols());
  std::vector<Eigen::Triplet<double>> t;
  for (int k = 0; k < a.outerSize(); ++k)
    for (SparseMatrix::InnerIterator it(a, k); it; ++it) t.emplace_back(static_cast<int>(it.row()), static_cast<int>(it.col()), it.value());
  for (int k = 0; k < b.outerSize(); ++k)
    for (SparseMatrix::InnerIterator it(b, k); it; ++it)
      t.emplace_back(static_cast<int>(it.row()), static_cast<int>(a.cols() + it.col()), it.value());
  out.setFromTriplets(t.begin(), t.end());
  return out;
}

inline SparseMatrix symmetrized(const SparseMatrix &a) {
  SparseMatrix t = a.transpose();
  SparseMatrix s = 0.5 * (a + t);
  s.prune(0.0);
  return s;
}

/// Curl, mixed and divergence maps on the unknown vector x = (v_perp, v3);
/// for m = 0 the v3 block is dropped.
struct ReducedMaps {
  SparseMatrix C, Q, B;
};

inline ReducedMaps reduced_maps(const ReducedGrid &g, int m) {
  ReducedMaps r;
  if (m == 0) {
    r.C = g.C;
    r.Q = SparseMatrix(g.nfaces(), g.nfaces());
    r.B = g.D;
    return r;
  }
  const double md = m;
  r.C = hstack(g.C, SparseMatrix(g.nnodes, g.ncells));
  r.Q = hstack(SparseMatrix(md * identity_matrix(g.nfaces())), g.G);
  r.B = hstack(g.D, SparseMatrix(md * identity_matrix(g.ncells)));
  return r;
}

} // namespace detail

/// Matrix of the regularized form
///   sum_nodes w (curl v)^2 + sum_faces w |grad v3 + m v|^2 + s sum_cells w (div v + m v3)^2
/// in the unknowns (v_perp faces, v3 cells); the v3 block is omitted for m = 0.
/// The discrete L2 mass is h^2 times the identity and is divided out.
inline SparseMatrix assemble_reduced(const ReducedGrid &g, int m, double s) {
  if (m < 0) throw DomainError("reduced form: m must be >= 0");
  if (!(s > 0.0)) throw DomainError("reduced form: s must be positive");
  const auto maps = detail::reduced_maps(g, m);
  SparseMatrix a = SparseMatrix(maps.C.transpose()) * detail::diag_matrix(g.w_node) * maps.C;
  if (m > 0) a += SparseMatrix(maps.Q.transpose()) * detail::diag_matrix(g.w_face) * maps.Q;
  a += s * (SparseMatrix(maps.B.transpose()) * detail::diag_matrix(g.w_cell) * maps.B);
  return detail::symmetrized(a);
}

enum class ReducedKind { Physical, Spurious };

struct ReducedEigenpair {
  int m = 0;
  double Lambda = 0.0;
  double s = 1.0;
  ReducedKind kind = ReducedKind::Physical;
  /// Share of the Rayleigh quotient carried by the divergence penalty:
  /// s sum w (div v + m v3)^2 / Lambda. About 0 for physical pairs, 1 for gradients.
  double div_residual = 0.0;
  /// |Lambda(2s) - Lambda(s)| for the matching physical pair, NaN when not checked.
  double s_shift = std::numeric_limits<double>::quiet_NaN();
  Eigen::VectorXd v_perp; ///< face values, x faces first
  Eigen::VectorXd v3;     ///< cell values (empty for m = 0)
  std::shared_ptr<const ReducedGrid> grid;

  bool physical() const { return kind == ReducedKind::Physical; }
};

struct ReducedOptions {
  /// Cell size used when the cross section is a Rectangle.
  double h = 0.0;
  /// Physical when div_residual <= tau; 0 selects min(0.5, max(1e-6, 50 h^2)).
  double tau_phys = 0.0;
  /// Re-solve with 2s and record s_shift on the physical pairs.
  bool check_s = true;
  double cluster_tol = 1e-8;
  EigenOptions eigen;
};

namespace detail {

inline std::shared_ptr<const GridMask> epsvar_mask(const CrossSection &cs, double h) {
  if (cs.is_grid()) return cs.grid_ptr();
  if (const auto *r = std::get_if<Rectangle>(&cs.shape())) {
    const double step = h > 0.0 ? h : std::min(r->l1, r->l2) / 32.0;
    return std::make_shared<const GridMask>(GridMask::rectangle(r->l1, r->l2, step));
  }
  throw DomainError("variable permittivity: cross section must be a grid mask or a rectangle");
}

/// Eigenpairs (sorted) with each cluster rotated so that the divergence map
/// is diagonal on it; returns pairs of (value, vector, div residual).
struct SplitPair {
  double value, residual;
  Eigen::VectorXd x;
};

inline std::vector<SplitPair> split_clusters(const Eigen::VectorXd &values, const Eigen::MatrixXd &vectors,
                                             const SparseMatrix &B, double rel_tol) {
  std::vector<SplitPair> out;
  const Eigen::Index n = values.size();
  for (Eigen::Index a = 0; a < n;) {
    Eigen::Index b = a + 1;
    while (b < n && values[b] - values[b - 1] <= rel_tol * std::max(1.0, std::abs(values[b]))) ++b;
    const Eigen::MatrixXd V = vectors.middleCols(a, b - a);
    const Eigen::MatrixXd BV = B * V;
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(BV, Eigen::ComputeFullV);
    const Eigen::MatrixXd W = V * svd.matrixV();
    const Eigen::VectorXd sv = svd.singularValues();
    // singular values come sorted descending; list the smallest residuals first
    for (Eigen::Index c = b - a - 1; c >= 0; --c) {
      const double res = c < sv.size() ? sv[c] : 0.0;
      Eigen::VectorXd x = W.col(c);
      // deterministic sign: largest-magnitude entry positive
      Eigen::Index imax = 0;
      x.cwiseAbs().maxCoeff(&imax);
      if (x[imax] < 0.0) x = -x;
      out.push_back({values[a + c], res, std::move(x)});
    }
    a = b;
  }
  return out;
}

inline std::vector<ReducedEigenpair> reduced_solve(const std::shared_ptr<const ReducedGrid> &grid, int m, double s,
                                                   int count, const ReducedOptions &opt) {
  const SparseMatrix A = assemble_reduced(*grid, m, s);
  const SparseMatrix B = reduced_maps(*grid, m).B;
  const int n = static_cast<int>(A.rows());
  const double tau = opt.tau_phys > 0.0 ? opt.tau_phys : std::min(0.5, std::max(1e-6, 50.0 * grid->h() * grid->h()));
  const double scale = std::max(1.0, inf_norm(A));
  int request = std::min(n, 2 * count + 8);
  for (;;) {
    const auto res = smallest_eigenpairs(A, request, opt.eigen);
    if (res.values[0] < -1e-10 * scale) throw SolverError("reduced form: assembled matrix is indefinite");
    auto pairs = split_clusters(res.values, res.vectors, B, opt.cluster_tol);
    for (auto &p : pairs) {
      const double rq = p.x.dot(A * p.x);
      const Eigen::VectorXd bx = B * p.x;
      p.residual = rq <= 1e-13 * scale ? 0.0 : s * bx.cwiseProduct(bx).dot(grid->w_cell) / rq;
    }
    // the top cluster may be incomplete unless the whole spectrum was computed
    if (request < n) {
      const double top = pairs.back().value;
      std::erase_if(pairs, [&](const SplitPair &p) {
        return top - p.value <= opt.cluster_tol * std::max(1.0, std::abs(top));
      });
    }
    std::vector<ReducedEigenpair> out;
    int physical = 0;
    for (auto &p : pairs) {
      ReducedEigenpair e;
      e.m = m;
      e.s = s;
      e.Lambda = std::max(0.0, p.value);
      e.div_residual = p.residual;
      e.kind = p.residual <= tau ? ReducedKind::Physical : ReducedKind::Spurious;
      if (e.physical()) {
        if (physical >= count) continue;
        ++physical;
      }
      const int nf = grid->nfaces();
      // eigenvectors are orthonormal in the l2 sense; rescale to unit discrete L2 norm
      const double h = grid->h();
      e.v_perp = p.x.head(nf) / h;
      if (m > 0) e.v3 = p.x.tail(grid->ncells) / h;
      e.grid = grid;
      out.push_back(std::move(e));
    }
    if (physical >= count || request == n) return out;
    request = std::min(n, 2 * request);
  }
}

} // namespace detail

/// Eigenpairs of the regularized reduced magnetic problem for axial index m,
/// until `count` physical pairs are found. Spurious pairs below the last
/// physical one are returned too, flagged as such.
inline std::vector<ReducedEigenpair> reduced_spectrum(const CrossSection &cs, const PermittivityMap &eps, int m,
                                                      double s, int count, const ReducedOptions &opt = {}) {
  if (m < 0) throw DomainError("reduced spectrum: m must be >= 0");
  if (!(s > 0.0)) throw DomainError("reduced spectrum: s must be positive");
  if (count < 1) throw DomainError("reduced spectrum: count must be >= 1");
  const auto grid = make_reduced_grid(detail::epsvar_mask(cs, opt.h), eps);
  auto out = detail::reduced_solve(grid, m, s, count, opt);
  // drop spurious pairs above the last physical one
  while (!out.empty() && !out.back().physical()) out.pop_back();
  if (opt.check_s) {
    const auto twice = detail::reduced_solve(grid, m, 2.0 * s, count, opt);
    std::vector<double> phys2;
    for (const auto &e : twice)
      if (e.physical()) phys2.push_back(e.Lambda);
    std::size_t k = 0;
    for (auto &e : out) {
      if (!e.physical()) continue;
      if (k < phys2.size()) e.s_shift = std::abs(phys2[k] - e.Lambda);
      ++k;
    }
  }
  return out;
}

inline std::vector<ReducedEigenpair> physical_only(std::vector<ReducedEigenpair> pairs) {
  std::erase_if(pairs, [](const ReducedEigenpair &e) { return !e.physical(); });
  return pairs;
}

struct TmPair {
  double Lambda = 0.0;
  /// Dirichlet generator v, normalized so that integral eps v^2 = 1; H = (curl_perp v, 0).
  std::shared_ptr<const GridFunction> v;

  TransverseValue eval(Vec2 p) const {
    const auto s = v->evaluate(p);
    return TransverseValue{s.v, s.dx, s.dy, 0.0};
  }
};

/// Generalized Dirichlet problem -Lap v = lambda eps v on the cell grid, using
/// the same discrete Laplacian as the transverse module.
inline std::vector<TmPair> tm_family_m0(const CrossSection &cs, const PermittivityMap &eps, int count,
                                        const ReducedOptions &opt = {}) {
  if (count < 1) throw DomainError("tm family: count must be >= 1");
  const auto mask = detail::epsvar_mask(cs, opt.h);
  const auto e = eps.on_mask(*mask);
  Eigen::VectorXd isq(static_cast<Eigen::Index>(e.size()));
  for (std::size_t i = 0; i < e.size(); ++i) isq[static_cast<Eigen::Index>(i)] = 1.0 / std::sqrt(e[i]);
  const SparseMatrix L = mask->laplacian(true);
  const SparseMatrix S = detail::symmetrized(detail::diag_matrix(isq) * L * detail::diag_matrix(isq));
  auto res = smallest_eigenpairs(S, count, opt.eigen);
  canonicalize_clusters(res.values, res.vectors, opt.cluster_tol);
  std::vector<TmPair> out;
  const double h = mask->h();
  for (Eigen::Index c = 0; c < res.values.size(); ++c) {
    std::vector<double> vals(e.size());
    for (std::size_t i = 0; i < e.size(); ++i)
      vals[i] = isq[static_cast<Eigen::Index>(i)] * res.vectors(static_cast<Eigen::Index>(i), c) / h;
    out.push_back({res.values[c], std::make_shared<const GridFunction>(mask, std::move(vals),
                                                                      GridFunction::Ghost::Dirichlet)});
  }
  return out;
}

namespace detail {

/// Bilinear interpolation on a lattice origin + ((a + ox) h, (b + oy) h);
/// points off the lattice or without a value count as zero.
struct LatticeField {
  Vec2 origin;
  double h = 1.0, ox = 0.0, oy = 0.0;
  int na = 0, nb = 0;
  std::vector<double> values;

  double at(int a, int b) const {
    if (a < 0 || b < 0 || a >= na || b >= nb) return 0.0;
    return values[static_cast<std::size_t>(b * na + a)];
  }

  double operator()(Vec2 p) const {
    const double fx = (p.x - origin.x) / h - ox, fy = (p.y - origin.y) / h - oy;
    const int a = static_cast<int>(std::floor(fx)), b = static_cast<int>(std::floor(fy));
    const double tx = fx - a, ty = fy - b;
    return (1 - tx) * (1 - ty) * at(a, b) + tx * (1 - ty) * at(a + 1, b) + (1 - tx) * ty * at(a, b + 1) +
           tx * ty * at(a + 1, b + 1);
  }
};

inline LatticeField xface_field(const ReducedGrid &g, const Eigen::VectorXd &faces) {
  const auto &mk = *g.mask;
  LatticeField f{mk.origin(), mk.h(), 0.0, 0.5, mk.nx() + 1, mk.ny(), {}};
  f.values.assign(static_cast<std::size_t>(f.na * f.nb), 0.0);
  for (int b = 0; b < f.nb; ++b)
    for (int a = 0; a < f.na; ++a)
      if (const int id = g.xface(a, b); id >= 0) f.values[static_cast<std::size_t>(b * f.na + a)] = faces[id];
  return f;
}

inline LatticeField yface_field(const ReducedGrid &g, const Eigen::VectorXd &faces) {
  const auto &mk = *g.mask;
  LatticeField f{mk.origin(), mk.h(), 0.5, 0.0, mk.nx(), mk.ny() + 1, {}};
  f.values.assign(static_cast<std::size_t>(f.na * f.nb), 0.0);
  for (int b = 0; b < f.nb; ++b)
    for (int a = 0; a < f.na; ++a)
      if (const int id = g.yface(a, b); id >= 0) f.values[static_cast<std::size_t>(b * f.na + a)] = faces[id];
  return f;
}

inline LatticeField node_field(const ReducedGrid &g, const Eigen::VectorXd &nodes) {
  const auto &mk = *g.mask;
  LatticeField f{mk.origin(), mk.h(), 0.0, 0.0, mk.nx() + 1, mk.ny() + 1, {}};
  f.values.assign(static_cast<std::size_t>(f.na * f.nb), 0.0);
  for (int b = 0; b < f.nb; ++b)
    for (int a = 0; a < f.na; ++a)
      if (const int id = g.node(a, b); id >= 0) f.values[static_cast<std::size_t>(b * f.na + a)] = nodes[id];
  return f;
}

} // namespace detail

/// 3D mode on omega x (0, pi) with conducting walls:
///   H = (v_perp(x_perp) cos(m x3), v3(x_perp) sin(m x3)),  E = (i / (k eps)) curl H,
/// where curl H uses the discrete curl and grad v3 + m v_perp of the grid.
inline ModeSpec lift_to_3d(const ReducedEigenpair &pair) {
  if (!pair.grid) throw DomainError("lift: pair carries no grid");
  if (!pair.physical()) throw DomainError("lift: pair is spurious");
  if (!(pair.Lambda > 0.0)) throw DomainError("lift: Lambda = 0 has no electric field to reconstruct");
  const auto g = pair.grid;
  const int m = pair.m;
  const int nf = g->nfaces();
  const double k = std::sqrt(pair.Lambda);
  const double h = g->h();

  Eigen::VectorXd vx = Eigen::VectorXd::Zero(nf), vy = Eigen::VectorXd::Zero(nf);
  vx.head(g->nx_faces) = pair.v_perp.head(g->nx_faces);
  vy.tail(g->ny_faces) = pair.v_perp.tail(g->ny_faces);
  Eigen::VectorXd q = m * pair.v_perp;
  if (m > 0) q += g->G * pair.v3;
  Eigen::VectorXd qx = Eigen::VectorXd::Zero(nf), qy = Eigen::VectorXd::Zero(nf);
  qx.head(g->nx_faces) = q.head(g->nx_faces);
  qy.tail(g->ny_faces) = q.tail(g->ny_faces);
  const Eigen::VectorXd curl = g->C * pair.v_perp;

  const auto hx = detail::xface_field(*g, vx), hy = detail::yface_field(*g, vy);
  const auto ex = detail::yface_field(*g, qy), ey = detail::xface_field(*g, qx);
  const auto ez = detail::node_field(*g, curl);
  std::shared_ptr<const GridFunction> h3;
  if (m > 0) {
    std::vector<double> vals(pair.v3.data(), pair.v3.data() + pair.v3.size());
    h3 = std::make_shared<const GridFunction>(g->mask, std::move(vals), GridFunction::Ghost::Neumann);
  }

  auto eps_at = [g](Vec2 p) {
    const auto &mk = *g->mask;
    const int i = static_cast<int>(std::floor((p.x - mk.origin().x) / mk.h()));
    const int j = static_cast<int>(std::floor((p.y - mk.origin().y) / mk.h()));
    const int u = mk.unknown(std::clamp(i, 0, mk.nx() - 1), std::clamp(j, 0, mk.ny() - 1));
    return u >= 0 ? g->eps[static_cast<std::size_t>(u)] : 1.0;
  };

  ModeSpec s;
  s.polarization = m == 0 ? Polarization::TM : Polarization::Hybrid;
  s.family = "EPS";
  s.Lambda = pair.Lambda;
  s.k = k;
  s.order = {m};
  s.indices = "m=" + std::to_string(m);
  s.H = [hx, hy, h3, m](Vec3 x) {
    const Vec2 p = x.perp();
    const double c = std::cos(m * x.z), sn = std::sin(m * x.z);
    return real_vec(hx(p) * c, hy(p) * c, h3 ? h3->evaluate(p).v * sn : 0.0);
  };
  // curl H = (s (d_y v3 + m v_y), -s (d_x v3 + m v_x), c curl_perp v_perp)
  s.E = [ex, ey, ez, m, k, eps_at](Vec3 x) {
    const Vec2 p = x.perp();
    const double c = std::cos(m * x.z), sn = std::sin(m * x.z);
    const complex f = complex(0.0, 1.0) / (k * eps_at(p));
    return f * real_vec(sn * ex(p), -sn * ey(p), c * ez(p));
  };
  const double ic = m == 0 ? std::numbers::pi : 0.5 * std::numbers::pi, is = 0.5 * std::numbers::pi;
  const double vperp2 = pair.v_perp.squaredNorm() * h * h;
  const double v32 = m > 0 ? pair.v3.squaredNorm() * h * h : 0.0;
  s.norm_H = std::sqrt(vperp2 * ic + v32 * is);
  double eq = 0.0, ec = 0.0;
  const Eigen::VectorXd qe = q.cwiseProduct(g->w_face);
  const Eigen::VectorXd ce = curl.cwiseProduct(g->w_node);
  eq = qe.squaredNorm() * h * h;
  ec = ce.squaredNorm() * h * h;
  s.norm_E = std::sqrt(eq * is + ec * ic) / k;
  const auto mask = g->mask;
  s.inside = [mask](Vec3 x) {
    return x.z >= -1e-12 && x.z <= std::numbers::pi + 1e-12 && mask->contains(x.perp(), 1e-12);
  };
  return s;
}

} // namespace cavity
