#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>
#include <vector>

#include "errors.hpp"
#include "mode.hpp"
#include "rootfind.hpp"
#include "specfun.hpp"
#include "vec.hpp"

namespace cavity {

/// DirichletFamily: E = M[q] with psi_n(kR) = 0.
/// NeumannFamily: E = N[q] with psi_n'(kR) = 0.
enum class BallFamily { DirichletFamily, NeumannFamily };

/// Complex: Y_n^m. Real: sqrt(2) P_n^|m| cos(m phi) for m > 0, sin(|m| phi) for m < 0.
enum class HarmonicBasis { Complex, Real };

struct BallMode {
  BallFamily family = BallFamily::DirichletFamily;
  int n = 1;
  int m = 0;
  int p = 1;
  double k = 0.0;
  double R = 1.0;
  HarmonicBasis basis = HarmonicBasis::Complex;

  std::string family_name() const { return family == BallFamily::DirichletFamily ? "DIR" : "NEU"; }
  std::string indices() const {
    return "n=" + std::to_string(n) + "/m=" + std::to_string(m) + "/p=" + std::to_string(p);
  }
  std::string label() const { return family_name() + "/" + indices(); }
};

namespace detail {

inline HarmonicValue ball_harmonic(const BallMode &b, double theta, double phi) {
  if (b.basis == HarmonicBasis::Complex) return spherical_harmonic_full(b.n, b.m, theta, phi);
  const int am = std::abs(b.m);
  const auto leg = normalized_legendre(b.n, am, theta);
  HarmonicValue h;
  if (b.m == 0) {
    h.value = leg.p;
    h.d_theta = leg.dp;
    return h;
  }
  const double s2 = std::numbers::sqrt2;
  const double c = std::cos(am * phi), s = std::sin(am * phi);
  // m > 0: cos(m phi); m < 0: sin(|m| phi)
  const double ang = b.m > 0 ? c : s;
  const double dang = b.m > 0 ? -am * s : am * c;
  h.value = s2 * leg.p * ang;
  h.d_theta = s2 * leg.dp * ang;
  h.d_phi = s2 * leg.p * dang;
  h.d_phi_over_sin = s2 * leg.p_over_sin * dang;
  return h;
}

struct Spherical {
  double rho, theta, phi;
};

inline Spherical to_spherical(Vec3 x) {
  const double rho = norm(x);
  const double theta = rho > 0.0 ? std::acos(std::clamp(x.z / rho, -1.0, 1.0)) : 0.0;
  const double phi = std::atan2(x.y, x.x);
  return {rho, theta, phi};
}

/// M[q] = grad q x rho_hat for q = Y psi_n(k rho).
inline CVec3 ball_M(const BallMode &b, Vec3 x) {
  const auto s = to_spherical(x);
  if (s.rho < 1e-12 * b.R) return CVec3{};
  const auto h = ball_harmonic(b, s.theta, s.phi);
  const double f = riccati(RiccatiKind::Psi, b.n, b.k * s.rho).value / s.rho;
  return from_spherical(f * h.d_phi_over_sin, -f * h.d_theta, 0.0, s.theta, s.phi);
}

/// N[q] = grad(d_rho q) + k^2 q rho_hat.
inline CVec3 ball_N(const BallMode &b, Vec3 x) {
  auto s = to_spherical(x);
  if (s.rho < 1e-12 * b.R) {
    if (b.n != 1) return CVec3{};
    // Continuous limit for n = 1: evaluate on a tiny sphere along +z.
    const double r = 1e-9 * b.R;
    return ball_N(b, Vec3{0.0, 0.0, r});
  }
  const auto h = ball_harmonic(b, s.theta, s.phi);
  const auto r = riccati(RiccatiKind::Psi, b.n, b.k * s.rho);
  const double tang = b.k * r.derivative / s.rho;
  const double radial = b.n * (b.n + 1.0) * r.value / (s.rho * s.rho);
  return from_spherical(tang * h.d_theta, tang * h.d_phi_over_sin, radial * h.value, s.theta, s.phi);
}

/// integral over (0, R) of psi_n(k rho)^2 by Gauss-Legendre.
inline double riccati_square_integral(int n, double k, double R) {
  constexpr int kPoints = 96;
  // Nodes from Newton on P_96.
  static const auto rule = [] {
    std::vector<std::pair<double, double>> r;
    for (int i = 1; i <= kPoints; ++i) {
      double z = std::cos(std::numbers::pi * (i - 0.25) / (kPoints + 0.5));
      double dp = 0.0;
      for (int it = 0; it < 100; ++it) {
        double p0 = 1.0, p1 = z;
        for (int j = 2; j <= kPoints; ++j) {
          const double p2 = ((2.0 * j - 1.0) * z * p1 - (j - 1.0) * p0) / j;
          p0 = p1;
          p1 = p2;
        }
        dp = kPoints * (z * p1 - p0) / (z * z - 1.0);
        const double dz = p1 / dp;
        z -= dz;
        if (std::abs(dz) < 1e-16) break;
      }
      r.emplace_back(z, 2.0 / ((1.0 - z * z) * dp * dp));
    }
    return r;
  }();
  double sum = 0.0;
  for (const auto &[z, w] : rule) {
    const double rho = 0.5 * R * (z + 1.0);
    const double v = riccati(RiccatiKind::Psi, n, k * rho).value;
    sum += w * v * v;
  }
  return 0.5 * R * sum;
}

} // namespace detail

/// All ball modes with k <= k_max, sorted by k, then family (DIR < NEU), n, p, m.
inline std::vector<BallMode> ball_spectrum(double R, double k_max, HarmonicBasis basis = HarmonicBasis::Complex) {
  if (!(R > 0.0)) throw DomainError("ball: radius must be positive");
  if (!(k_max > 0.0)) throw DomainError("ball: k_max must be positive");
  const int n_max = static_cast<int>(std::ceil(k_max * R)) + 8;
  std::vector<BallMode> out;
  for (int n = 1; n <= n_max; ++n) {
    for (BallFamily fam : {BallFamily::DirichletFamily, BallFamily::NeumannFamily}) {
      const auto bc = fam == BallFamily::DirichletFamily ? BoundaryKind::Dirichlet : BoundaryKind::Neumann;
      const auto zeros = riccati_zeros_below(bc, n, R, k_max);
      for (std::size_t p = 0; p < zeros.size(); ++p) {
        for (int m = -n; m <= n; ++m) {
          out.push_back(BallMode{fam, n, m, static_cast<int>(p) + 1, zeros[p], R, basis});
        }
      }
    }
  }
  std::stable_sort(out.begin(), out.end(), [](const BallMode &a, const BallMode &b) {
    if (a.k != b.k) return a.k < b.k;
    return std::make_tuple(static_cast<int>(a.family), a.n, a.p, a.m) <
           std::make_tuple(static_cast<int>(b.family), b.n, b.p, b.m);
  });
  return out;
}

/// E or H of a ball mode. Dirichlet family: E = M, H = (1/ik) N.
/// Neumann family: E = N, H = -ik M.
inline CVec3 ball_field(const BallMode &b, FieldKind which, Vec3 x) {
  const complex ik(0.0, b.k);
  if (b.family == BallFamily::DirichletFamily) {
    return which == FieldKind::E ? detail::ball_M(b, x) : (1.0 / ik) * detail::ball_N(b, x);
  }
  return which == FieldKind::E ? detail::ball_N(b, x) : (-ik) * detail::ball_M(b, x);
}

inline std::vector<CVec3> ball_field(const BallMode &b, FieldKind which, const std::vector<Vec3> &points) {
  std::vector<CVec3> out;
  out.reserve(points.size());
  for (const auto &p : points) {
    if (norm(p) > b.R * (1.0 + 1e-12)) throw OutsideDomainError("ball: point outside the ball");
    out.push_back(ball_field(b, which, p));
  }
  return out;
}

inline ModeSpec to_mode_spec(const BallMode &b) {
  ModeSpec s;
  // Dirichlet-family E = M has no radial component; Neumann-family H does not.
  s.polarization = b.family == BallFamily::DirichletFamily ? Polarization::TE : Polarization::TM;
  s.family = b.family_name();
  s.indices = b.indices();
  s.k = b.k;
  s.Lambda = b.k * b.k;
  s.order = {b.n, b.p, b.m};
  s.E = [b](Vec3 x) { return ball_field(b, FieldKind::E, x); };
  s.H = [b](Vec3 x) { return ball_field(b, FieldKind::H, x); };
  const double m_norm = std::sqrt(b.n * (b.n + 1.0) * detail::riccati_square_integral(b.n, b.k, b.R));
  s.norm_E = b.family == BallFamily::DirichletFamily ? m_norm : b.k * m_norm;
  s.norm_H = s.norm_E;
  const double R = b.R;
  s.inside = [R](Vec3 x) { return norm(x) <= R * (1.0 + 1e-12); };
  return s;
}

inline std::vector<ModeSpec> build_ball_modes(double R, double k_max, HarmonicBasis basis = HarmonicBasis::Complex) {
  std::vector<ModeSpec> out;
  for (const auto &b : ball_spectrum(R, k_max, basis)) out.push_back(to_mode_spec(b));
  return out;
}

} // namespace cavity
