#pragma once

#include <cstdio>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "errors.hpp"
#include "mode.hpp"
#include "vec.hpp"

namespace cavity {

/// Uniform samples from lo to hi inclusive along one axis (a single point when n = 1).
struct AxisSpec {
  double lo = 0.0, hi = 0.0;
  int n = 1;

  double at(int i) const { return n == 1 ? lo : lo + (hi - lo) * i / (n - 1); }
  double spacing() const { return n == 1 ? 0.0 : (hi - lo) / (n - 1); }
};

/// Tensor grid of sample points; x varies fastest.
struct SampleGrid {
  AxisSpec x, y, z;

  std::size_t size() const {
    return static_cast<std::size_t>(x.n) * static_cast<std::size_t>(y.n) * static_cast<std::size_t>(z.n);
  }

  std::vector<Vec3> points() const {
    std::vector<Vec3> out;
    out.reserve(size());
    for (int k = 0; k < z.n; ++k)
      for (int j = 0; j < y.n; ++j)
        for (int i = 0; i < x.n; ++i) out.push_back({x.at(i), y.at(j), z.at(k)});
    return out;
  }
};

/// "lo:hi:n" or a single value.
inline AxisSpec parse_axis(const std::string &text, double (*number)(const std::string &)) {
  AxisSpec a;
  const auto c1 = text.find(':');
  if (c1 == std::string::npos) {
    a.lo = a.hi = number(text);
    return a;
  }
  const auto c2 = text.find(':', c1 + 1);
  if (c2 == std::string::npos) throw FormatError("axis '" + text + "': expected lo:hi:n");
  a.lo = number(text.substr(0, c1));
  a.hi = number(text.substr(c1 + 1, c2 - c1 - 1));
  try {
    std::size_t used = 0;
    a.n = std::stoi(text.substr(c2 + 1), &used);
    if (used != text.size() - c2 - 1) throw FormatError("");
  } catch (const std::exception &) {
    throw FormatError("axis '" + text + "': sample count is not an integer");
  }
  if (a.n < 1) throw FormatError("axis '" + text + "': sample count must be >= 1");
  if (a.n == 1 && a.hi != a.lo) throw FormatError("axis '" + text + "': one sample needs lo = hi");
  return a;
}

/// Field values on a sample grid; points outside the domain are marked and hold zeros.
struct FieldSamples {
  std::string mode;
  std::string field; ///< "E" or "H"
  double Lambda = 0.0;
  SampleGrid grid;
  std::vector<CVec3> values;
  std::vector<bool> inside;
};

inline FieldSamples sample_field(const ModeSpec &mode, FieldKind which, const SampleGrid &grid) {
  FieldSamples s;
  s.mode = mode.label();
  s.field = which == FieldKind::E ? "E" : "H";
  s.Lambda = mode.Lambda;
  s.grid = grid;
  const auto &fn = which == FieldKind::E ? mode.E : mode.H;
  for (const auto &p : grid.points()) {
    const bool in = !mode.inside || mode.inside(p);
    s.inside.push_back(in);
    s.values.push_back(in ? fn(p) : CVec3{});
  }
  return s;
}

namespace detail {

inline std::string fmt17(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

} // namespace detail

/// ASCII structured grid: '#' header lines then one row per point, x fastest:
///   x y z Re(Fx) Im(Fx) Re(Fy) Im(Fy) Re(Fz) Im(Fz) inside
inline void write_sgrid(std::ostream &out, const FieldSamples &s) {
  using detail::fmt17;
  out << "# sgrid 1\n";
  out << "# mode " << s.mode << "\n";
  out << "# field " << s.field << "\n";
  out << "# Lambda " << fmt17(s.Lambda) << "\n";
  out << "# dims " << s.grid.x.n << " " << s.grid.y.n << " " << s.grid.z.n << "\n";
  out << "# origin " << fmt17(s.grid.x.lo) << " " << fmt17(s.grid.y.lo) << " " << fmt17(s.grid.z.lo) << "\n";
  out << "# spacing " << fmt17(s.grid.x.spacing()) << " " << fmt17(s.grid.y.spacing()) << " "
      << fmt17(s.grid.z.spacing()) << "\n";
  out << "# columns x y z re_x im_x re_y im_y re_z im_z inside\n";
  const auto pts = s.grid.points();
  for (std::size_t i = 0; i < pts.size(); ++i) {
    out << fmt17(pts[i].x) << ' ' << fmt17(pts[i].y) << ' ' << fmt17(pts[i].z);
    for (int c = 0; c < 3; ++c) out << ' ' << fmt17(s.values[i][c].real()) << ' ' << fmt17(s.values[i][c].imag());
    out << ' ' << (s.inside[i] ? 1 : 0) << '\n';
  }
}

/// Same columns as the structured grid, comma separated with a header row.
inline void write_field_csv(std::ostream &out, const FieldSamples &s) {
  using detail::fmt17;
  out << "x,y,z,re_x,im_x,re_y,im_y,re_z,im_z,inside\n";
  const auto pts = s.grid.points();
  for (std::size_t i = 0; i < pts.size(); ++i) {
    out << fmt17(pts[i].x) << ',' << fmt17(pts[i].y) << ',' << fmt17(pts[i].z);
    for (int c = 0; c < 3; ++c) out << ',' << fmt17(s.values[i][c].real()) << ',' << fmt17(s.values[i][c].imag());
    out << ',' << (s.inside[i] ? 1 : 0) << '\n';
  }
}

} // namespace cavity
