#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "vec.hpp"

namespace cavity {

/// Hybrid is used for variable-permittivity modes with m >= 1, whose fields
/// have all six components.
enum class Polarization { TE, TM, TEM, Magnetostatic, Hybrid };

inline const char *to_string(Polarization p) {
  switch (p) {
  case Polarization::TE: return "TE";
  case Polarization::TM: return "TM";
  case Polarization::TEM: return "TEM";
  case Polarization::Magnetostatic: return "MS";
  default: return "HYB";
  }
}

inline int family_rank(Polarization p) {
  switch (p) {
  case Polarization::Magnetostatic: return 0;
  case Polarization::TE: return 1;
  case Polarization::TM: return 2;
  case Polarization::TEM: return 3;
  default: return 4;
  }
}

using FieldFunction = std::function<CVec3(Vec3)>;

enum class FieldKind { E, H };

/// A classified Maxwell eigenmode with evaluable fields. Fields are returned
/// in Cartesian components.
struct ModeSpec {
  Polarization polarization = Polarization::TE;
  std::string family;  ///< "TE", "TM", "TEM", "MS", "DIR", "NEU", "EPS"
  std::string indices; ///< e.g. "k1=1/k2=0/m=1"
  double Lambda = 0.0;
  double k = 0.0;
  FieldFunction E;
  FieldFunction H;
  double norm_E = 0.0; ///< L2(Omega) norm of E
  double norm_H = 0.0;
  std::function<bool(Vec3)> inside;
  /// Sort key beyond (Lambda, family): lexicographic integers from the indices.
  std::vector<int> order;

  std::string label() const { return indices.empty() ? family : family + "/" + indices; }
};

inline bool mode_less(const ModeSpec &a, const ModeSpec &b) {
  if (a.Lambda != b.Lambda) return a.Lambda < b.Lambda;
  if (family_rank(a.polarization) != family_rank(b.polarization))
    return family_rank(a.polarization) < family_rank(b.polarization);
  if (a.family != b.family) return a.family < b.family;
  return a.order < b.order;
}

inline std::vector<CVec3> evaluate_field(const ModeSpec &mode, FieldKind which, const std::vector<Vec3> &points) {
  std::vector<CVec3> out;
  out.reserve(points.size());
  const auto &fn = which == FieldKind::E ? mode.E : mode.H;
  for (const auto &p : points) {
    if (mode.inside && !mode.inside(p)) {
      char buf[160];
      std::snprintf(buf, sizeof buf, "point (%.17g, %.17g, %.17g) is outside the domain", p.x, p.y, p.z);
      throw OutsideDomainError(buf);
    }
    out.push_back(fn(p));
  }
  return out;
}

struct Contributor {
  std::string family;
  std::string indices;
  double Lambda = 0.0;
};

struct SpectrumEntry {
  double Lambda = 0.0;
  int multiplicity = 0;
  std::vector<Contributor> contributors;
};

struct SpectrumTable {
  double merge_tol = 1e-9;
  std::vector<SpectrumEntry> entries;

  std::size_t total() const {
    std::size_t n = 0;
    for (const auto &e : entries) n += e.contributors.size();
    return n;
  }

  /// Columns Lambda,k,multiplicity,family,indices; families and indices of
  /// the contributors are joined with '+' and ';'.
  std::string to_csv() const {
    std::string out = "Lambda,k,multiplicity,family,indices\n";
    char buf[128];
    for (const auto &e : entries) {
      std::string fam, idx;
      for (std::size_t i = 0; i < e.contributors.size(); ++i) {
        if (i) {
          fam += '+';
          idx += ';';
        }
        fam += e.contributors[i].family;
        idx += e.contributors[i].indices.empty() ? e.contributors[i].family : e.contributors[i].indices;
      }
      std::snprintf(buf, sizeof buf, "%.17g,%.17g,%d,", e.Lambda, std::sqrt(std::max(e.Lambda, 0.0)),
                    e.multiplicity);
      out += buf;
      out += fam + "," + idx + "\n";
    }
    return out;
  }
};

/// Merges a sorted mode list into distinct eigenvalues. A mode joins the
/// current entry if it lies within merge_tol * max(1, Lambda) of the previous mode.
inline SpectrumTable make_spectrum_table(std::vector<ModeSpec> modes, double merge_tol) {
  if (!(merge_tol >= 0.0)) throw DomainError("spectrum table: merge_tol must be >= 0");
  std::stable_sort(modes.begin(), modes.end(), mode_less);
  SpectrumTable table;
  table.merge_tol = merge_tol;
  double prev = 0.0;
  for (const auto &m : modes) {
    const bool join = !table.entries.empty() && m.Lambda - prev <= merge_tol * std::max(1.0, std::abs(m.Lambda));
    if (!join) table.entries.push_back(SpectrumEntry{m.Lambda, 0, {}});
    auto &e = table.entries.back();
    e.contributors.push_back(Contributor{m.family, m.indices, m.Lambda});
    e.multiplicity = static_cast<int>(e.contributors.size());
    prev = m.Lambda;
  }
  return table;
}

} // namespace cavity
