#pragma once

#include <algorithm>
#include <cmath>
#include <memory>
#include <string>
#include <vector>

#include "axial.hpp"
#include "errors.hpp"
#include "mode.hpp"
#include "parallel.hpp"
#include "transverse.hpp"

namespace cavity {

enum class LateralWall { Conducting, Insulating };
/// MixedCondIns: conducting at x3 = 0, insulating at x3 = l.
enum class EndWalls { Conducting, Insulating, MixedCondIns };

struct WallConfig {
  LateralWall lateral = LateralWall::Conducting;
  EndWalls ends = EndWalls::Conducting;

  bool all_conducting() const { return lateral == LateralWall::Conducting && ends == EndWalls::Conducting; }

  /// "cond", "ins-ends" or "mixed-ends".
  static WallConfig parse(const std::string &s) {
    if (s == "cond") return {};
    if (s == "ins-ends") return {LateralWall::Conducting, EndWalls::Insulating};
    if (s == "mixed-ends") return {LateralWall::Conducting, EndWalls::MixedCondIns};
    throw DomainError("walls: expected cond, ins-ends or mixed-ends, got '" + s + "'");
  }

  std::string name() const {
    switch (ends) {
    case EndWalls::Conducting: return "cond";
    case EndWalls::Insulating: return "ins-ends";
    default: return "mixed-ends";
    }
  }
};

struct AssemblyOptions {
  TransverseOptions transverse;
};

/// Axial boundary conditions of the three families for each end-wall choice.
struct AxialChoice {
  AxialBC te, tm, tem;
};

inline AxialChoice axial_choice(const WallConfig &walls) {
  if (walls.lateral != LateralWall::Conducting) {
    throw DomainError("walls: insulating lateral walls are not supported");
  }
  switch (walls.ends) {
  case EndWalls::Conducting: return {AxialBC::Dirichlet, AxialBC::Neumann, AxialBC::Dirichlet};
  case EndWalls::Insulating: return {AxialBC::Neumann, AxialBC::Dirichlet, AxialBC::Neumann};
  default: return {AxialBC::MixedDirNeu, AxialBC::MixedNeuDir, AxialBC::MixedDirNeu};
  }
}

namespace detail {

inline std::function<bool(Vec3)> product_inside(const CrossSection &cs, double length) {
  return [cs, length](Vec3 x) {
    const double tol = 1e-12 * std::max(1.0, length);
    return x.z >= -tol && x.z <= length + tol && cs.contains(x.perp(), tol);
  };
}

inline std::vector<int> index_order(const TransverseIndex &t, int m) {
  return {t.k1, t.k2, t.n, t.p, static_cast<int>(t.parity), t.j, m};
}

inline ModeSpec te_mode(const TransverseEigenpair &v, const AxialEigenpair &w, const CrossSection &cs, double length) {
  ModeSpec s;
  s.polarization = Polarization::TE;
  s.family = "TE";
  s.indices = v.index.label() + "/m=" + std::to_string(w.m);
  s.Lambda = v.lambda + w.mu;
  s.k = std::sqrt(s.Lambda);
  s.order = index_order(v.index, w.m);
  const auto ev = v.eval;
  const double k = s.k;
  // E = (curl_perp v, 0) g,  H = (1/ik) (grad v g', -lap v g)
  s.E = [ev, w](Vec3 x) {
    const auto t = ev(x.perp());
    const double g = w.g(x.z);
    return real_vec(t.dy * g, -t.dx * g, 0.0);
  };
  s.H = [ev, w, k](Vec3 x) {
    const auto t = ev(x.perp());
    const double gp = w.g_prime(x.z), g = w.g(x.z);
    const complex c = complex(0.0, -1.0) / k;
    return c * real_vec(t.dx * gp, t.dy * gp, -t.lap * g);
  };
  s.norm_E = std::sqrt(v.lambda * w.g_norm_sq());
  s.norm_H = s.norm_E;
  s.inside = product_inside(cs, length);
  return s;
}

inline ModeSpec tm_mode(const TransverseEigenpair &v, const AxialEigenpair &w, const CrossSection &cs, double length) {
  ModeSpec s;
  s.polarization = Polarization::TM;
  s.family = "TM";
  s.indices = v.index.label() + "/m=" + std::to_string(w.m);
  s.Lambda = v.lambda + w.mu;
  s.k = std::sqrt(s.Lambda);
  s.order = index_order(v.index, w.m);
  const auto ev = v.eval;
  const double k = s.k;
  // E = (grad v g', -lap v g),  H = -ik (curl_perp v g, 0)
  s.E = [ev, w](Vec3 x) {
    const auto t = ev(x.perp());
    const double gp = w.g_prime(x.z), g = w.g(x.z);
    return real_vec(t.dx * gp, t.dy * gp, -t.lap * g);
  };
  s.H = [ev, w, k](Vec3 x) {
    const auto t = ev(x.perp());
    const double g = w.g(x.z);
    return complex(0.0, -k) * real_vec(t.dy * g, -t.dx * g, 0.0);
  };
  s.norm_E = std::sqrt(v.lambda * s.Lambda * w.g_norm_sq());
  s.norm_H = s.norm_E;
  s.inside = product_inside(cs, length);
  return s;
}

inline ModeSpec tem_mode(const TopologicalPotential &v, const AxialEigenpair &w, const CrossSection &cs,
                         double length) {
  ModeSpec s;
  s.polarization = Polarization::TEM;
  s.family = "TEM";
  s.indices = "d=" + std::to_string(v.d) + "/m=" + std::to_string(w.m);
  s.Lambda = w.mu;
  s.k = std::sqrt(s.Lambda);
  s.order = {v.d, w.m};
  const auto ev = v.eval;
  const double k = s.k;
  // E = (grad v g, 0),  H = (i/k) (curl_perp v g', 0); H = 0 when Lambda = 0.
  s.E = [ev, w](Vec3 x) {
    const auto t = ev(x.perp());
    const double g = w.g(x.z);
    return real_vec(t.dx * g, t.dy * g, 0.0);
  };
  s.H = [ev, w, k](Vec3 x) {
    if (k == 0.0) return CVec3{};
    const auto t = ev(x.perp());
    const double gp = w.g_prime(x.z);
    return complex(0.0, 1.0 / k) * real_vec(t.dy * gp, -t.dx * gp, 0.0);
  };
  s.norm_E = std::sqrt(v.gradient_norm_sq * w.g_norm_sq());
  s.norm_H = k == 0.0 ? 0.0 : s.norm_E;
  s.inside = product_inside(cs, length);
  return s;
}

inline ModeSpec magnetostatic_mode(const TopologicalPotential &v, const CrossSection &cs, double length) {
  ModeSpec s;
  s.polarization = Polarization::Magnetostatic;
  s.family = "MS";
  s.indices = "d=" + std::to_string(v.d);
  s.order = {v.d};
  const auto ev = v.eval;
  s.E = [](Vec3) { return CVec3{}; };
  s.H = [ev](Vec3 x) {
    const auto t = ev(x.perp());
    return real_vec(t.dy, -t.dx, 0.0);
  };
  s.norm_E = 0.0;
  s.norm_H = std::sqrt(v.gradient_norm_sq * length);
  s.inside = product_inside(cs, length);
  return s;
}

inline bool is_neumann_constant(const TransverseEigenpair &e) {
  switch (e.index.kind) {
  case TransverseIndex::Kind::Rectangle: return e.index.k1 == 0 && e.index.k2 == 0;
  case TransverseIndex::Kind::Polar: return e.index.p == 0;
  default: return e.index.j == 0;
  }
}

} // namespace detail

/// All Maxwell modes of cs x (0, length) with Lambda <= lambda_max, sorted by
/// Lambda, then family (MS < TE < TM < TEM), then indices.
inline std::vector<ModeSpec> build_modes(const CrossSection &cs, double length, const WallConfig &walls,
                                         double lambda_max, const AssemblyOptions &opt = {}) {
  if (!(length > 0.0)) throw DomainError("build_modes: interval length must be positive");
  if (!(lambda_max > 0.0)) throw DomainError("build_modes: lambda_max must be positive");
  const AxialChoice ax = axial_choice(walls);

  const auto te_axial = axial_spectrum_below(ax.te, length, lambda_max);
  const auto tm_axial = axial_spectrum_below(ax.tm, length, lambda_max);
  const auto tem_axial = axial_spectrum_below(ax.tem, length, lambda_max);

  std::vector<TransverseEigenpair> neu, dir;
  const double neu_bound = te_axial.empty() ? -1.0 : lambda_max - te_axial.front().mu;
  const double dir_bound = tm_axial.empty() ? -1.0 : lambda_max - tm_axial.front().mu;
  parallel_for(2, [&](std::size_t task) {
    if (task == 0 && neu_bound > 0.0)
      neu = transverse_spectrum_below(cs, BoundaryKind::Neumann, neu_bound, opt.transverse);
    if (task == 1 && dir_bound > 0.0)
      dir = transverse_spectrum_below(cs, BoundaryKind::Dirichlet, dir_bound, opt.transverse);
  });
  const auto top = topological_potentials(cs);

  std::vector<ModeSpec> modes;
  for (const auto &v : neu) {
    if (detail::is_neumann_constant(v)) continue;
    for (const auto &w : te_axial)
      if (v.lambda + w.mu <= lambda_max) modes.push_back(detail::te_mode(v, w, cs, length));
  }
  for (const auto &v : dir)
    for (const auto &w : tm_axial)
      if (v.lambda + w.mu <= lambda_max) modes.push_back(detail::tm_mode(v, w, cs, length));
  for (const auto &v : top) {
    for (const auto &w : tem_axial) modes.push_back(detail::tem_mode(v, w, cs, length));
    if (walls.all_conducting()) modes.push_back(detail::magnetostatic_mode(v, cs, length));
  }
  std::stable_sort(modes.begin(), modes.end(), mode_less);
  return modes;
}

inline SpectrumTable spectrum_table(const CrossSection &cs, double length, const WallConfig &walls, double lambda_max,
                                    double merge_tol, const AssemblyOptions &opt = {}) {
  return make_spectrum_table(build_modes(cs, length, walls, lambda_max, opt), merge_tol);
}

} // namespace cavity
