#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "linalg.hpp"
#include "vec.hpp"

namespace cavity {

/// Staircase cross section on a uniform cell grid. Cell (i, j) covers
/// [ox + i h, ox + (i+1) h] x [oy + j h, oy + (j+1) h]. Cells are interior
/// ('.'), exterior ('#'), or exterior with an explicit hole label ('1'..'9').
/// Everything outside the nx x ny grid is exterior and belongs to the outer
/// boundary component.
class GridMask {
public:
  GridMask() = default;

  /// `cells` is row-major with row j = 0 at the bottom.
  GridMask(int nx, int ny, double h, std::vector<char> cells, Vec2 origin = {})
      : nx_(nx), ny_(ny), h_(h), origin_(origin), cells_(std::move(cells)) {
    if (nx < 1 || ny < 1) throw FormatError("grid mask: nx and ny must be positive");
    if (!(h > 0.0) || !std::isfinite(h)) throw FormatError("grid mask: h must be positive");
    if (cells_.size() != static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny))
      throw FormatError("grid mask: cell count does not match nx*ny");
    for (char c : cells_) {
      if (c != '.' && c != '#' && !(c >= '1' && c <= '9'))
        throw FormatError(std::string("grid mask: invalid cell character '") + c + "'");
    }
    analyse();
  }

  /// Text form: "nx ny h", then ny rows of nx characters, top row first.
  static GridMask parse(std::istream &in) {
    std::string line;
    int line_no = 0;
    auto next_line = [&](std::string &out) {
      while (std::getline(in, out)) {
        ++line_no;
        if (!out.empty() && out.back() == '\r') out.pop_back();
        if (!out.empty()) return true;
      }
      return false;
    };
    if (!next_line(line)) throw FormatError("grid mask: empty input");
    std::istringstream header(line);
    int nx = 0, ny = 0;
    double h = 0.0;
    if (!(header >> nx >> ny >> h))
      throw FormatError("grid mask line " + std::to_string(line_no) + ": expected \"nx ny h\"");
    if (nx < 1 || ny < 1 || !(h > 0.0))
      throw FormatError("grid mask line " + std::to_string(line_no) + ": need nx, ny >= 1 and h > 0");
    std::vector<char> cells(static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny));
    for (int row = 0; row < ny; ++row) {
      if (!next_line(line))
        throw FormatError("grid mask: expected " + std::to_string(ny) + " rows, got " + std::to_string(row));
      if (static_cast<int>(line.size()) != nx)
        throw FormatError("grid mask line " + std::to_string(line_no) + ": expected " + std::to_string(nx) +
                          " characters, got " + std::to_string(line.size()));
      const int j = ny - 1 - row;
      for (int i = 0; i < nx; ++i) cells[static_cast<std::size_t>(j * nx + i)] = line[static_cast<std::size_t>(i)];
    }
    return GridMask(nx, ny, h, std::move(cells));
  }

  static GridMask load(const std::string &path) {
    std::ifstream in(path);
    if (!in) throw FormatError("grid mask: cannot open " + path);
    return parse(in);
  }

  std::string to_text() const {
    std::ostringstream out;
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", h_);
    out << nx_ << ' ' << ny_ << ' ' << buf << '\n';
    for (int j = ny_ - 1; j >= 0; --j) {
      for (int i = 0; i < nx_; ++i) out << cells_[static_cast<std::size_t>(j * nx_ + i)];
      out << '\n';
    }
    return out.str();
  }

  /// [0, l1] x [0, l2]; l1 and l2 must be integer multiples of h.
  static GridMask rectangle(double l1, double l2, double h) {
    const int nx = commensurate(l1, h), ny = commensurate(l2, h);
    return GridMask(nx, ny, h, std::vector<char>(static_cast<std::size_t>(nx * ny), '.'));
  }

  /// Disc of radius R centred at the origin; a cell is interior if its centre is inside.
  static GridMask disc(double R, double h) { return annulus(0.0, R, h); }

  /// Annulus r0 < r < R centred at the origin; cells with centre inside r0 form hole 1.
  static GridMask annulus(double r0, double R, double h) {
    if (!(R > 0.0 && r0 >= 0.0 && r0 < R)) throw DomainError("grid mask: need 0 <= r0 < R");
    const int half = static_cast<int>(std::ceil(R / h - 1e-9)) + 1;
    const int n = 2 * half;
    std::vector<char> cells(static_cast<std::size_t>(n * n), '#');
    for (int j = 0; j < n; ++j) {
      for (int i = 0; i < n; ++i) {
        const double x = (i - half + 0.5) * h, y = (j - half + 0.5) * h;
        const double r = std::hypot(x, y);
        char &c = cells[static_cast<std::size_t>(j * n + i)];
        if (r < R) c = r >= r0 ? '.' : '1';
      }
    }
    return GridMask(n, n, h, std::move(cells), Vec2{-half * h, -half * h});
  }

  /// Rectangle [0, l1] x [0, l2] with one rectangular hole [a1, b1] x [a2, b2].
  static GridMask rectangle_with_hole(double l1, double l2, double a1, double b1, double a2, double b2, double h) {
    const int nx = commensurate(l1, h), ny = commensurate(l2, h);
    std::vector<char> cells(static_cast<std::size_t>(nx * ny), '.');
    for (int j = 0; j < ny; ++j)
      for (int i = 0; i < nx; ++i) {
        const double x = (i + 0.5) * h, y = (j + 0.5) * h;
        if (x > a1 && x < b1 && y > a2 && y < b2) cells[static_cast<std::size_t>(j * nx + i)] = '1';
      }
    return GridMask(nx, ny, h, std::move(cells));
  }

  int nx() const { return nx_; }
  int ny() const { return ny_; }
  double h() const { return h_; }
  Vec2 origin() const { return origin_; }

  /// Number of boundary components: 1 + number of holes.
  int D() const { return 1 + holes_; }

  bool in_grid(int i, int j) const { return i >= 0 && j >= 0 && i < nx_ && j < ny_; }

  bool interior(int i, int j) const {
    return in_grid(i, j) && cells_[static_cast<std::size_t>(j * nx_ + i)] == '.';
  }

  /// Unknown number of an interior cell, -1 otherwise.
  int unknown(int i, int j) const { return in_grid(i, j) ? index_[static_cast<std::size_t>(j * nx_ + i)] : -1; }

  /// Boundary component of an exterior cell: 0 = outer, d >= 1 = hole d.
  int component(int i, int j) const {
    if (!in_grid(i, j)) return 0;
    return component_[static_cast<std::size_t>(j * nx_ + i)];
  }

  int unknowns() const { return static_cast<int>(cells_list_.size()); }
  const std::vector<std::pair<int, int>> &cells() const { return cells_list_; }

  Vec2 centre(int i, int j) const { return {origin_.x + (i + 0.5) * h_, origin_.y + (j + 0.5) * h_}; }

  double area() const { return static_cast<double>(unknowns()) * h_ * h_; }

  /// Point in the closed union of interior cells.
  bool contains(Vec2 p, double tol = 1e-12) const {
    const double fx = (p.x - origin_.x) / h_, fy = (p.y - origin_.y) / h_;
    const double eps = tol / h_ + 1e-12;
    const int i0 = static_cast<int>(std::floor(fx - eps)), i1 = static_cast<int>(std::floor(fx + eps));
    const int j0 = static_cast<int>(std::floor(fy - eps)), j1 = static_cast<int>(std::floor(fy + eps));
    for (int j = j0; j <= j1; ++j)
      for (int i = i0; i <= i1; ++i)
        if (interior(i, j)) return true;
    return false;
  }

  /// 5-point -Delta_h on interior cells. Faces to exterior cells carry a ghost
  /// value: Dirichlet ghost -u (zero trace on the face), Neumann ghost u.
  SparseMatrix laplacian(bool dirichlet) const {
    const int n = unknowns();
    std::vector<Eigen::Triplet<double>> trip;
    trip.reserve(static_cast<std::size_t>(5 * n));
    const double w = 1.0 / (h_ * h_);
    for (int u = 0; u < n; ++u) {
      const auto [i, j] = cells_list_[static_cast<std::size_t>(u)];
      double diag = 0.0;
      for (const auto &[di, dj] : kNeighbours) {
        const int nb = unknown(i + di, j + dj);
        if (nb >= 0) {
          diag += w;
          trip.emplace_back(u, nb, -w);
        } else if (dirichlet) {
          diag += 2.0 * w;
        }
      }
      trip.emplace_back(u, u, diag);
    }
    SparseMatrix a(n, n);
    a.setFromTriplets(trip.begin(), trip.end());
    return a;
  }

  static constexpr std::pair<int, int> kNeighbours[4] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};

private:
  static int commensurate(double l, double h) {
    const double q = l / h;
    const long n = std::lround(q);
    if (n < 1 || std::abs(q - static_cast<double>(n)) > 1e-9 * std::max(1.0, q))
      throw DomainError("grid mask: length " + std::to_string(l) + " is not a multiple of h = " + std::to_string(h));
    return static_cast<int>(n);
  }

  void analyse() {
    index_.assign(cells_.size(), -1);
    component_.assign(cells_.size(), -1);
    cells_list_.clear();
    for (int j = 0; j < ny_; ++j)
      for (int i = 0; i < nx_; ++i)
        if (cells_[static_cast<std::size_t>(j * nx_ + i)] == '.') {
          index_[static_cast<std::size_t>(j * nx_ + i)] = static_cast<int>(cells_list_.size());
          cells_list_.emplace_back(i, j);
        }
    if (cells_list_.empty()) throw FormatError("grid mask: no interior cells");

    // Interior must be 4-connected.
    {
      std::vector<char> seen(cells_.size(), 0);
      std::vector<std::pair<int, int>> stack{cells_list_.front()};
      seen[static_cast<std::size_t>(stack[0].second * nx_ + stack[0].first)] = 1;
      std::size_t reached = 0;
      while (!stack.empty()) {
        const auto [i, j] = stack.back();
        stack.pop_back();
        ++reached;
        for (const auto &[di, dj] : kNeighbours) {
          const int a = i + di, b = j + dj;
          if (interior(a, b) && !seen[static_cast<std::size_t>(b * nx_ + a)]) {
            seen[static_cast<std::size_t>(b * nx_ + a)] = 1;
            stack.emplace_back(a, b);
          }
        }
      }
      if (reached != cells_list_.size()) throw FormatError("grid mask: interior is not 4-connected");
    }

    // Exterior components with 8-connectivity on a grid padded by one ring.
    const int px = nx_ + 2, py = ny_ + 2;
    std::vector<int> comp(static_cast<std::size_t>(px * py), -1);
    auto exterior_padded = [&](int a, int b) { return !interior(a - 1, b - 1); };
    int ncomp = 0;
    std::vector<int> first_cell;
    for (int b = 0; b < py; ++b)
      for (int a = 0; a < px; ++a) {
        if (!exterior_padded(a, b) || comp[static_cast<std::size_t>(b * px + a)] >= 0) continue;
        std::vector<std::pair<int, int>> stack{{a, b}};
        comp[static_cast<std::size_t>(b * px + a)] = ncomp;
        while (!stack.empty()) {
          const auto [x, y] = stack.back();
          stack.pop_back();
          for (int dy = -1; dy <= 1; ++dy)
            for (int dx = -1; dx <= 1; ++dx) {
              const int s = x + dx, t = y + dy;
              if (s < 0 || t < 0 || s >= px || t >= py) continue;
              if (!exterior_padded(s, t) || comp[static_cast<std::size_t>(t * px + s)] >= 0) continue;
              comp[static_cast<std::size_t>(t * px + s)] = ncomp;
              stack.emplace_back(s, t);
            }
        }
        first_cell.push_back(b * px + a);
        ++ncomp;
      }
    // Component 0 contains the padding corner: the outer boundary.
    std::vector<int> label(static_cast<std::size_t>(ncomp), 0);
    for (int j = 0; j < ny_; ++j)
      for (int i = 0; i < nx_; ++i) {
        const char c = cells_[static_cast<std::size_t>(j * nx_ + i)];
        if (c < '1' || c > '9') continue;
        const int k = comp[static_cast<std::size_t>((j + 1) * px + i + 1)];
        const int lab = c - '0';
        if (k == 0) throw FormatError("grid mask: hole label " + std::string(1, c) + " on the outer exterior");
        auto &slot = label[static_cast<std::size_t>(k)];
        if (slot != 0 && slot != lab)
          throw FormatError("grid mask: one hole carries labels " + std::to_string(slot) + " and " +
                            std::to_string(lab));
        slot = lab;
      }
    std::map<int, int> owner;
    for (int k = 1; k < ncomp; ++k) {
      const int lab = label[static_cast<std::size_t>(k)];
      if (lab == 0) continue;
      if (!owner.emplace(lab, k).second)
        throw FormatError("grid mask: label " + std::to_string(lab) + " used by two separate holes");
    }
    // Labelled holes first in label order, then unlabelled holes in scan order.
    std::vector<int> hole_number(static_cast<std::size_t>(ncomp), 0);
    int next = 1;
    for (const auto &[lab, k] : owner) hole_number[static_cast<std::size_t>(k)] = next++;
    for (int k = 1; k < ncomp; ++k)
      if (label[static_cast<std::size_t>(k)] == 0) hole_number[static_cast<std::size_t>(k)] = next++;
    holes_ = ncomp - 1;
    for (int j = 0; j < ny_; ++j)
      for (int i = 0; i < nx_; ++i) {
        const int k = comp[static_cast<std::size_t>((j + 1) * px + i + 1)];
        if (k >= 0) component_[static_cast<std::size_t>(j * nx_ + i)] = hole_number[static_cast<std::size_t>(k)];
      }
  }

  int nx_ = 0, ny_ = 0;
  double h_ = 1.0;
  Vec2 origin_{};
  std::vector<char> cells_;
  std::vector<int> index_;
  std::vector<int> component_;
  std::vector<std::pair<int, int>> cells_list_;
  int holes_ = 0;
};

/// Cell-centred grid function with a ghost rule, evaluated by bilinear
/// interpolation between cell centres.
class GridFunction {
public:
  enum class Ghost { Dirichlet, Neumann };

  GridFunction(std::shared_ptr<const GridMask> mask, std::vector<double> values, Ghost ghost,
               std::vector<double> component_values = {})
      : mask_(std::move(mask)), values_(std::move(values)), ghost_(ghost),
        boundary_(std::move(component_values)) {}

  /// Value at cell (i, j); exterior cells get the ghost value averaged over
  /// their interior 4-neighbours (Dirichlet ghost 2g - u, Neumann ghost u).
  double cell_value(int i, int j) const {
    const int u = mask_->unknown(i, j);
    if (u >= 0) return values_[static_cast<std::size_t>(u)];
    const double g = boundary_value(mask_->component(i, j));
    double sum = 0.0;
    int count = 0;
    for (const auto &[di, dj] : GridMask::kNeighbours) {
      const int nb = mask_->unknown(i + di, j + dj);
      if (nb < 0) continue;
      const double v = values_[static_cast<std::size_t>(nb)];
      sum += ghost_ == Ghost::Dirichlet ? 2.0 * g - v : v;
      ++count;
    }
    if (count == 0) return ghost_ == Ghost::Dirichlet ? g : 0.0;
    return sum / count;
  }

  struct Sample {
    double v, dx, dy;
  };

  Sample evaluate(Vec2 p) const {
    const double h = mask_->h();
    const double fx = (p.x - mask_->origin().x) / h - 0.5, fy = (p.y - mask_->origin().y) / h - 0.5;
    const int i0 = static_cast<int>(std::floor(fx)), j0 = static_cast<int>(std::floor(fy));
    const double tx = fx - i0, ty = fy - j0;
    const double v00 = cell_value(i0, j0), v10 = cell_value(i0 + 1, j0);
    const double v01 = cell_value(i0, j0 + 1), v11 = cell_value(i0 + 1, j0 + 1);
    Sample s;
    s.v = (1 - tx) * (1 - ty) * v00 + tx * (1 - ty) * v10 + (1 - tx) * ty * v01 + tx * ty * v11;
    s.dx = ((1 - ty) * (v10 - v00) + ty * (v11 - v01)) / h;
    s.dy = ((1 - tx) * (v01 - v00) + tx * (v11 - v10)) / h;
    return s;
  }

  const std::vector<double> &values() const { return values_; }
  const GridMask &mask() const { return *mask_; }

private:
  double boundary_value(int component) const {
    if (component < 0 || static_cast<std::size_t>(component) >= boundary_.size()) return 0.0;
    return boundary_[static_cast<std::size_t>(component)];
  }

  std::shared_ptr<const GridMask> mask_;
  std::vector<double> values_;
  Ghost ghost_;
  std::vector<double> boundary_;
};

} // namespace cavity
