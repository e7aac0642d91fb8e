#pragma once

#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "errors.hpp"
#include "specfun.hpp"

namespace cavity {

enum class ZeroFamily {
  JZero,
  JPrimeZero,
  AnnulusDirichlet,
  AnnulusNeumann,
  RiccatiDirichlet,
  RiccatiNeumann
};

enum class BoundaryKind { Dirichlet, Neumann };

struct ZeroSequence {
  ZeroFamily family = ZeroFamily::JZero;
  int n = 0;
  double r0 = 0.0;
  double R = 1.0;
  std::vector<double> zeros;
};

/// Scan limits for a zero search. Either `count` zeros are requested, or all
/// zeros up to `limit` (when count == 0).
struct ScanOptions {
  double k_max = 0.0; ///< 0 selects the family default
};

namespace detail {

struct ValueSlope {
  double f;
  double df;
};

using ZeroFunction = std::function<ValueSlope(double)>;

inline double refine_zero(const ZeroFunction &fn, double a, double b, double fa) {
  // Bisection to a narrow bracket, then Newton guarded by the bracket.
  double lo = a, hi = b, flo = fa;
  while (hi - lo > 1e-6 * std::max(1.0, std::abs(lo))) {
    const double mid = 0.5 * (lo + hi);
    const double fm = fn(mid).f;
    if (fm == 0.0) return mid;
    if ((fm < 0.0) == (flo < 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  double x = 0.5 * (lo + hi);
  for (int it = 0; it < 60; ++it) {
    const auto v = fn(x);
    if (v.f == 0.0) return x;
    if ((v.f < 0.0) == (flo < 0.0)) {
      lo = x;
      flo = v.f;
    } else {
      hi = x;
    }
    double next = v.df != 0.0 ? x - v.f / v.df : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    const double step = std::abs(next - x);
    x = next;
    if (step <= 4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(x)) ||
        hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(x))) {
      break;
    }
  }
  return x;
}

inline void certify_sign_change(const ZeroFunction &fn, double xi, const char *what) {
  const double fl = fn(xi - 1e-9).f, fr = fn(xi + 1e-9).f;
  if (!((fl <= 0.0 && fr >= 0.0) || (fl >= 0.0 && fr <= 0.0))) {
    throw TangencyError(std::string(what) + ": no sign change at " + std::to_string(xi));
  }
}

/// Scans [start, ...) with the given step, returning either `count` zeros or
/// all zeros <= limit (count == 0).
inline std::vector<double> scan_zeros(const ZeroFunction &fn, double start, double step,
                                      std::size_t count, double limit, double k_max,
                                      const char *what) {
  std::vector<double> zeros;
  double a = start;
  double fa = fn(a).f;
  const double stop = count == 0 ? limit : k_max;
  while (count == 0 || zeros.size() < count) {
    if (a >= stop) {
      if (count == 0) break;
      throw BracketError(std::string(what) + ": found " + std::to_string(zeros.size()) + " of " +
                         std::to_string(count) + " zeros below " + std::to_string(k_max));
    }
    const double b = a + step;
    const double fb = fn(b).f;
    if (fa == 0.0) {
      if (a > start) zeros.push_back(a);
    } else if ((fa < 0.0) != (fb < 0.0) && fb != 0.0) {
      const double xi = refine_zero(fn, a, b, fa);
      certify_sign_change(fn, xi, what);
      if (count != 0 || xi <= limit) zeros.push_back(xi);
    }
    a = b;
    fa = fb;
  }
  return zeros;
}

inline ZeroFunction j_function(int n) {
  return [n](double x) {
    const auto v = cylinder_values(n, x, false);
    return ValueSlope{v.j, v.jp};
  };
}

inline ZeroFunction j_prime_function(int n) {
  return [n](double x) {
    const auto v = cylinder_values(n, x, false);
    // J'' = -J'/x - (1 - n^2/x^2) J
    const double jpp = -v.jp / x - (1.0 - static_cast<double>(n) * n / (x * x)) * v.j;
    return ValueSlope{v.jp, jpp};
  };
}

inline ZeroFunction annulus_function(BoundaryKind bc, int n, double r0, double R) {
  return [=](double k) {
    const auto a = cylinder_values(n, k * r0);
    const auto b = cylinder_values(n, k * R);
    if (bc == BoundaryKind::Dirichlet) {
      const double f = a.j * b.y - a.y * b.j;
      const double df = r0 * (a.jp * b.y - a.yp * b.j) + R * (a.j * b.yp - a.y * b.jp);
      return ValueSlope{f, df};
    }
    auto second = [n](double x, double c, double cp) {
      return -cp / x - (1.0 - static_cast<double>(n) * n / (x * x)) * c;
    };
    const double ajpp = second(k * r0, a.j, a.jp), aypp = second(k * r0, a.y, a.yp);
    const double bjpp = second(k * R, b.j, b.jp), bypp = second(k * R, b.y, b.yp);
    const double f = a.jp * b.yp - a.yp * b.jp;
    const double df = r0 * (ajpp * b.yp - aypp * b.jp) + R * (a.jp * bypp - a.yp * bjpp);
    return ValueSlope{f, df};
  };
}

inline ZeroFunction riccati_function(BoundaryKind bc, int n, double R) {
  return [=](double k) {
    const double x = k * R;
    const auto v = riccati(RiccatiKind::Psi, n, x);
    if (bc == BoundaryKind::Dirichlet) return ValueSlope{v.value, R * v.derivative};
    // psi'' = (n(n+1)/x^2 - 1) psi
    const double pp = (n * (n + 1.0) / (x * x) - 1.0) * v.value;
    return ValueSlope{v.derivative, R * pp};
  };
}

inline std::vector<double> j_family_zeros(bool prime, int n, std::size_t count, double limit) {
  detail::check_order(n, "j_zeros");
  const auto fn = prime ? j_prime_function(n) : j_function(n);
  // All positive zeros of J_n and J'_n (n >= 1) exceed n; J'_0 has a zero at 0.
  const double start = std::max(0.5, prime ? 0.5 * n : 0.9 * n);
  const double k_max = 4.0 * (static_cast<double>(count) + 4.0) * std::numbers::pi + 2.0 * n + 10.0;
  return scan_zeros(fn, start, std::numbers::pi / 5.0, count, limit, k_max,
                    prime ? "j_prime_zeros" : "j_zeros");
}

inline void check_count(std::size_t count, const char *what) {
  if (count < 1) throw DomainError(std::string(what) + ": count must be >= 1");
}

} // namespace detail

inline ZeroSequence j_zeros(int n, std::size_t count) {
  detail::check_count(count, "j_zeros");
  return {ZeroFamily::JZero, n, 0.0, 1.0, detail::j_family_zeros(false, n, count, 0.0)};
}

inline ZeroSequence j_prime_zeros(int n, std::size_t count) {
  detail::check_count(count, "j_prime_zeros");
  return {ZeroFamily::JPrimeZero, n, 0.0, 1.0, detail::j_family_zeros(true, n, count, 0.0)};
}

/// All positive zeros of J_n (or J'_n) that are <= limit.
inline std::vector<double> j_zeros_below(int n, double limit, bool prime = false) {
  return detail::j_family_zeros(prime, n, 0, limit);
}

inline ZeroSequence annulus_zeros(BoundaryKind bc, int n, double r0, double R, std::size_t count,
                                  ScanOptions opt = {}) {
  detail::check_count(count, "annulus_zeros");
  detail::check_order(n, "annulus_zeros");
  if (!(r0 > 0.0 && R > r0)) throw DomainError("annulus_zeros: need 0 < r0 < R");
  const double width = R - r0;
  const double k_max = opt.k_max > 0.0 ? opt.k_max : 200.0 / width;
  const double start = std::max(1e-3 / R, 0.9 * n / R);
  const auto fn = detail::annulus_function(bc, n, r0, R);
  const auto family = bc == BoundaryKind::Dirichlet ? ZeroFamily::AnnulusDirichlet : ZeroFamily::AnnulusNeumann;
  return {family, n, r0, R,
          detail::scan_zeros(fn, start, std::numbers::pi / (5.0 * width), count, 0.0, k_max, "annulus_zeros")};
}

inline std::vector<double> annulus_zeros_below(BoundaryKind bc, int n, double r0, double R, double limit) {
  detail::check_order(n, "annulus_zeros");
  if (!(r0 > 0.0 && R > r0)) throw DomainError("annulus_zeros: need 0 < r0 < R");
  const double width = R - r0;
  const double start = std::max(1e-3 / R, 0.9 * n / R);
  if (start >= limit) return {};
  return detail::scan_zeros(detail::annulus_function(bc, n, r0, R), start,
                            std::numbers::pi / (5.0 * width), 0, limit, limit, "annulus_zeros");
}

inline ZeroSequence riccati_zeros(BoundaryKind bc, int n, double R, std::size_t count,
                                  ScanOptions opt = {}) {
  detail::check_count(count, "riccati_zeros");
  detail::check_order(n, "riccati_zeros");
  if (!(R > 0.0)) throw DomainError("riccati_zeros: need R > 0");
  const auto family = bc == BoundaryKind::Dirichlet ? ZeroFamily::RiccatiDirichlet : ZeroFamily::RiccatiNeumann;
  if (bc == BoundaryKind::Dirichlet && n == 0) {
    // psi_0 = sin: zeros are exactly p*pi.
    std::vector<double> z(count);
    for (std::size_t p = 0; p < count; ++p) z[p] = static_cast<double>(p + 1) * std::numbers::pi / R;
    return {family, n, 0.0, R, z};
  }
  const double k_max = opt.k_max > 0.0 ? opt.k_max
                                       : (4.0 * (static_cast<double>(count) + 4.0) * std::numbers::pi + 2.0 * n + 10.0) / R;
  const double start = std::max(0.5, 0.5 * n) / R;
  return {family, n, 0.0, R,
          detail::scan_zeros(detail::riccati_function(bc, n, R), start, std::numbers::pi / (5.0 * R), count, 0.0,
                             k_max, "riccati_zeros")};
}

inline std::vector<double> riccati_zeros_below(BoundaryKind bc, int n, double R, double limit) {
  detail::check_order(n, "riccati_zeros");
  if (bc == BoundaryKind::Dirichlet && n == 0) {
    std::vector<double> z;
    for (int p = 1; p * std::numbers::pi / R <= limit; ++p) z.push_back(p * std::numbers::pi / R);
    return z;
  }
  const double start = std::max(0.5, 0.5 * n) / R;
  if (start >= limit) return {};
  return detail::scan_zeros(detail::riccati_function(bc, n, R), start, std::numbers::pi / (5.0 * R), 0, limit,
                            limit, "riccati_zeros");
}

} // namespace cavity
