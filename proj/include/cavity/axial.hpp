#pragma once

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "errors.hpp"

namespace cavity {

/// Boundary conditions for -w'' = mu w on (0, l). Mixed variants name the
/// condition at 0 first.
enum class AxialBC { Dirichlet, Neumann, MixedDirNeu, MixedNeuDir };

inline const char *to_string(AxialBC bc) {
  switch (bc) {
  case AxialBC::Dirichlet: return "dir";
  case AxialBC::Neumann: return "neu";
  case AxialBC::MixedDirNeu: return "dir-neu";
  default: return "neu-dir";
  }
}

/// One axial eigenpair. `w` is L2(0, l)-normalized; `g` is the same
/// function with unit amplitude (sin, cos or 1), which is what the Maxwell
/// field formulas use.
struct AxialEigenpair {
  AxialBC bc = AxialBC::Dirichlet;
  int m = 1;
  double length = 1.0;
  double mu = 0.0;
  double freq = 0.0; ///< sqrt(mu)
  double amplitude = 1.0; ///< w = amplitude * g

  bool sine() const { return bc == AxialBC::Dirichlet || bc == AxialBC::MixedDirNeu; }

  double g(double x) const { return sine() ? std::sin(freq * x) : std::cos(freq * x); }
  double g_prime(double x) const { return sine() ? freq * std::cos(freq * x) : -freq * std::sin(freq * x); }
  double g_second(double x) const { return -mu * g(x); }

  double w(double x) const { return amplitude * g(x); }
  double w_prime(double x) const { return amplitude * g_prime(x); }

  /// integral of g^2 over (0, l)
  double g_norm_sq() const { return 1.0 / (amplitude * amplitude); }
};

inline int axial_first_index(AxialBC bc) { return bc == AxialBC::Neumann ? 0 : 1; }

inline AxialEigenpair axial_eigenpair(AxialBC bc, double length, int m) {
  if (!(length > 0.0) || !std::isfinite(length)) throw DomainError("axial: interval length must be positive");
  if (m < axial_first_index(bc)) throw IndexError("axial: index " + std::to_string(m) + " below the first index");
  AxialEigenpair e;
  e.bc = bc;
  e.m = m;
  e.length = length;
  const double step = std::numbers::pi / length;
  const bool mixed = bc == AxialBC::MixedDirNeu || bc == AxialBC::MixedNeuDir;
  // (m * (pi/l))^2 keeps integer results exact for l = pi.
  e.freq = mixed ? (m - 0.5) * step : m * step;
  e.mu = e.freq * e.freq;
  e.amplitude = (bc == AxialBC::Neumann && m == 0) ? std::sqrt(1.0 / length) : std::sqrt(2.0 / length);
  return e;
}

inline std::vector<AxialEigenpair> axial_spectrum(AxialBC bc, double length, int count) {
  if (count < 1) throw DomainError("axial: count must be >= 1");
  std::vector<AxialEigenpair> out;
  const int first = axial_first_index(bc);
  for (int m = first; m < first + count; ++m) out.push_back(axial_eigenpair(bc, length, m));
  return out;
}

/// All eigenpairs with mu <= mu_max.
inline std::vector<AxialEigenpair> axial_spectrum_below(AxialBC bc, double length, double mu_max) {
  std::vector<AxialEigenpair> out;
  for (int m = axial_first_index(bc);; ++m) {
    auto e = axial_eigenpair(bc, length, m);
    if (e.mu > mu_max) break;
    out.push_back(e);
  }
  return out;
}

} // namespace cavity
