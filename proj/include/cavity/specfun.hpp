#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <string>
#include <vector>

#include "errors.hpp"

namespace cavity {

enum class BesselKind { FirstKind, SecondKind };
enum class RiccatiKind { Psi, Chi };

namespace detail {

inline void check_finite(double x, const char *what) {
  if (!std::isfinite(x)) throw DomainError(std::string(what) + ": non-finite argument");
}

inline void check_order(int n, const char *what) {
  if (n < 0) throw DomainError(std::string(what) + ": negative order " + std::to_string(n));
}

/// J_0(x) .. J_nmax(x) by the ascending series; accurate for x <= 2.
inline std::vector<double> bessel_j_series(int nmax, double x) {
  std::vector<double> out(static_cast<std::size_t>(nmax) + 1, 0.0);
  const double half = 0.5 * x;
  const double q = -half * half;
  double lead = 1.0; // (x/2)^n / n!
  for (int n = 0; n <= nmax; ++n) {
    if (n > 0) lead *= half / n;
    if (lead == 0.0) break;
    double term = lead, sum = lead;
    for (int k = 1; k < 200; ++k) {
      term *= q / (static_cast<double>(k) * (k + n));
      sum += term;
      if (std::abs(term) < 1e-17 * std::abs(sum)) break;
    }
    out[static_cast<std::size_t>(n)] = sum;
  }
  return out;
}

/// J_0(x) .. J_nmax(x) by Miller's backward recurrence, normalized with
/// J_0 + 2 sum J_{2k} = 1.
inline std::vector<double> bessel_j_miller(int nmax, double x) {
  const double top = std::max<double>(nmax, std::ceil(x));
  int start = static_cast<int>(top + 30.0 + std::ceil(std::sqrt(60.0 * top)));
  if (start % 2 != 0) ++start;
  std::vector<double> f(static_cast<std::size_t>(start) + 2, 0.0);
  f[static_cast<std::size_t>(start)] = 1e-30;
  double sum = 0.0;
  for (int k = start; k >= 1; --k) {
    const auto ku = static_cast<std::size_t>(k);
    f[ku - 1] = (2.0 * k / x) * f[ku] - f[ku + 1];
    if ((k - 1) % 2 == 0 && k - 1 > 0) sum += 2.0 * f[ku - 1];
    if (std::abs(f[ku - 1]) > 1e200) {
      for (std::size_t i = ku - 1; i < f.size(); ++i) f[i] *= 1e-200;
      sum *= 1e-200;
    }
  }
  sum += f[0];
  std::vector<double> out(static_cast<std::size_t>(nmax) + 1);
  for (int n = 0; n <= nmax; ++n) out[static_cast<std::size_t>(n)] = f[static_cast<std::size_t>(n)] / sum;
  return out;
}

/// Hankel asymptotic expansion for Y_nu, nu in {0, 1}, large x.
inline double bessel_y_asymptotic(int nu, double x) {
  const double mu = 4.0 * nu * nu;
  double p = 1.0, q = 0.0, term = 1.0;
  double last = 1e300;
  for (int k = 1; k < 200; ++k) {
    const double odd = 2.0 * k - 1.0;
    term *= (mu - odd * odd) / (k * 8.0 * x);
    if (std::abs(term) > last) break;
    last = std::abs(term);
    switch (k % 4) {
    case 1: q += term; break;
    case 2: p -= term; break;
    case 3: q -= term; break;
    default: p += term; break;
    }
    if (std::abs(term) < 1e-17) break;
  }
  const double chi = x - (0.5 * nu + 0.25) * std::numbers::pi;
  return std::sqrt(2.0 / (std::numbers::pi * x)) * (p * std::sin(chi) + q * std::cos(chi));
}

/// Y_0 and Y_1 at x > 0.
inline void bessel_y01(double x, double &y0, double &y1) {
  if (x >= 25.0) {
    y0 = bessel_y_asymptotic(0, x);
    y1 = bessel_y_asymptotic(1, x);
    return;
  }
  // Neumann series: Y_0 = (2/pi)[(ln(x/2)+gamma) J_0 - 2 sum (-1)^k J_{2k}/k],
  // Y_1 = -Y_0' with J_{2k}' = (J_{2k-1} - J_{2k+1})/2.
  const int kmax = static_cast<int>(x + 40.0 + 3.0 * std::sqrt(x + 1.0));
  const auto j = x <= 2.0 ? bessel_j_series(2 * kmax + 1, x) : bessel_j_miller(2 * kmax + 1, x);
  const double lg = std::log(0.5 * x) + std::numbers::egamma;
  double s = 0.0, ds = 0.0;
  for (int k = 1; k <= kmax; ++k) {
    const double sign = (k % 2 == 0) ? 1.0 : -1.0;
    const auto i = static_cast<std::size_t>(2 * k);
    s += sign * j[i] / k;
    ds += sign * 0.5 * (j[i - 1] - j[i + 1]) / k;
  }
  const double c = 2.0 / std::numbers::pi;
  y0 = c * (lg * j[0] - 2.0 * s);
  const double dy0 = c * (j[0] / x - lg * j[1] - 2.0 * ds);
  y1 = -dy0;
}

} // namespace detail

/// J_0(x) .. J_nmax(x) in one sweep.
inline std::vector<double> bessel_j_table(int nmax, double x) {
  detail::check_order(nmax, "bessel_j");
  detail::check_finite(x, "bessel_j");
  if (x < 0.0) throw DomainError("bessel_j: negative argument");
  if (x == 0.0) {
    std::vector<double> out(static_cast<std::size_t>(nmax) + 1, 0.0);
    out[0] = 1.0;
    return out;
  }
  return x <= 2.0 ? detail::bessel_j_series(nmax, x) : detail::bessel_j_miller(nmax, x);
}

/// Y_0(x) .. Y_nmax(x) by forward recurrence (stable for Y).
inline std::vector<double> bessel_y_table(int nmax, double x) {
  detail::check_order(nmax, "bessel_y");
  detail::check_finite(x, "bessel_y");
  if (x <= 0.0) throw DomainError("bessel_y: argument must be positive");
  std::vector<double> out(static_cast<std::size_t>(std::max(nmax, 1)) + 1);
  detail::bessel_y01(x, out[0], out[1]);
  for (int n = 1; n < nmax; ++n) {
    const auto i = static_cast<std::size_t>(n);
    out[i + 1] = (2.0 * n / x) * out[i] - out[i - 1];
  }
  out.resize(static_cast<std::size_t>(nmax) + 1);
  return out;
}

inline double bessel_j(int n, double x) {
  return bessel_j_table(n, x)[static_cast<std::size_t>(n)];
}

inline double bessel_y(int n, double x) {
  return bessel_y_table(n, x)[static_cast<std::size_t>(n)];
}

/// J'_n = (J_{n-1} - J_{n+1}) / 2 with J_{-1} = -J_1.
inline double bessel_j_prime(int n, double x) {
  detail::check_order(n, "bessel_j_prime");
  const auto j = bessel_j_table(n + 1, x);
  const auto i = static_cast<std::size_t>(n);
  const double below = n == 0 ? -j[1] : j[i - 1];
  return 0.5 * (below - j[i + 1]);
}

inline double bessel_y_prime(int n, double x) {
  detail::check_order(n, "bessel_y_prime");
  const auto y = bessel_y_table(n + 1, x);
  const auto i = static_cast<std::size_t>(n);
  const double below = n == 0 ? -y[1] : y[i - 1];
  return 0.5 * (below - y[i + 1]);
}

inline double bessel(BesselKind kind, int n, double x) {
  return kind == BesselKind::FirstKind ? bessel_j(n, x) : bessel_y(n, x);
}

inline double bessel_prime(BesselKind kind, int n, double x) {
  return kind == BesselKind::FirstKind ? bessel_j_prime(n, x) : bessel_y_prime(n, x);
}

/// J_n, J'_n, and (for x > 0) Y_n, Y'_n at one point, sharing the sweeps.
struct CylinderValues {
  double j = 0.0, jp = 0.0, y = 0.0, yp = 0.0;
};

inline CylinderValues cylinder_values(int n, double x, bool with_y = true) {
  detail::check_order(n, "cylinder_values");
  CylinderValues v;
  const auto i = static_cast<std::size_t>(n);
  const auto j = bessel_j_table(n + 1, x);
  v.j = j[i];
  v.jp = 0.5 * ((n == 0 ? -j[1] : j[i - 1]) - j[i + 1]);
  if (with_y) {
    const auto y = bessel_y_table(n + 1, x);
    v.y = y[i];
    v.yp = 0.5 * ((n == 0 ? -y[1] : y[i - 1]) - y[i + 1]);
  }
  return v;
}

struct RiccatiValue {
  double value = 0.0;
  double derivative = 0.0;
};

/// psi_n(x) = x j_n(x) and chi_n(x) = -x y_n(x) with exact-formula derivatives
/// f_n' = f_{n-1} - (n/x) f_n.
inline RiccatiValue riccati(RiccatiKind kind, int n, double x) {
  detail::check_order(n, "riccati");
  detail::check_finite(x, "riccati");
  if (x <= 0.0) throw DomainError("riccati: argument must be positive");
  const double s = std::sin(x), c = std::cos(x);
  std::vector<double> f(static_cast<std::size_t>(n) + 2);
  if (kind == RiccatiKind::Chi) {
    f[0] = c;
    f[1] = c / x + s;
    for (int k = 1; k <= n; ++k) {
      const auto i = static_cast<std::size_t>(k);
      f[i + 1] = ((2.0 * k + 1.0) / x) * f[i] - f[i - 1];
    }
    if (n == 0) return {c, -s};
  } else {
    if (n == 0) return {s, c};
    if (x > n + 1.0) {
      // Upward recurrence is stable while n < x.
      f[0] = s;
      f[1] = s / x - c;
      for (int k = 1; k < n; ++k) {
        const auto i = static_cast<std::size_t>(k);
        f[i + 1] = ((2.0 * k + 1.0) / x) * f[i] - f[i - 1];
      }
    } else {
      const double top = std::max<double>(n, x);
      const int start = static_cast<int>(top + 30.0 + std::ceil(std::sqrt(60.0 * top)));
      std::vector<double> g(static_cast<std::size_t>(start) + 2, 0.0);
      g[static_cast<std::size_t>(start)] = 1e-30;
      for (int k = start; k >= 1; --k) {
        const auto i = static_cast<std::size_t>(k);
        g[i - 1] = ((2.0 * k + 1.0) / x) * g[i] - g[i + 1];
        if (std::abs(g[i - 1]) > 1e200) {
          for (std::size_t t = i - 1; t < g.size(); ++t) g[t] *= 1e-200;
        }
      }
      const double psi1 = s / x - c;
      const double scale = std::abs(s) > std::abs(psi1) ? s / g[0] : psi1 / g[1];
      for (int k = 0; k <= n; ++k) {
        const auto i = static_cast<std::size_t>(k);
        f[i] = g[i] * scale;
      }
    }
  }
  const auto i = static_cast<std::size_t>(n);
  return {f[i], f[i - 1] - (n / x) * f[i]};
}

/// Orthonormal associated Legendre factor: Y_n^m(theta, phi) = P(theta) e^{i m phi}
/// for m >= 0, Condon-Shortley phase included.
struct LegendreValue {
  double p = 0.0;        ///< normalized P_n^m(cos theta)
  double dp = 0.0;       ///< d/dtheta of p
  double p_over_sin = 0.0; ///< p / sin(theta); regular for m >= 1, zero is returned for m = 0
};

inline LegendreValue normalized_legendre(int n, int m, double theta) {
  if (n < 0 || m < 0 || m > n) {
    throw IndexError("normalized_legendre: need 0 <= m <= n, got n=" + std::to_string(n) +
                     " m=" + std::to_string(m));
  }
  detail::check_finite(theta, "normalized_legendre");
  const double x = std::cos(theta), s = std::sin(theta);
  // Column m of the table for both P and u = P / sin(theta), up to degree n + 1.
  // u obeys the same recurrence in n as P.
  double pmm = 1.0 / std::sqrt(4.0 * std::numbers::pi);
  double umm = 0.0;
  for (int k = 1; k <= m; ++k) {
    const double f = -std::sqrt((2.0 * k + 1.0) / (2.0 * k));
    umm = f * pmm;
    pmm = f * s * pmm;
  }
  auto column = [&](double seed, int upto) {
    std::vector<double> v(static_cast<std::size_t>(upto - m) + 1, 0.0);
    v[0] = seed;
    if (upto > m) v[1] = std::sqrt(2.0 * m + 3.0) * x * seed;
    for (int l = m + 2; l <= upto; ++l) {
      const double a = std::sqrt((4.0 * l * l - 1.0) / (static_cast<double>(l) * l - static_cast<double>(m) * m));
      const double b = std::sqrt(((l - 1.0) * (l - 1.0) - static_cast<double>(m) * m) /
                                 (4.0 * (l - 1.0) * (l - 1.0) - 1.0));
      const auto i = static_cast<std::size_t>(l - m);
      v[i] = a * (x * v[i - 1] - b * v[i - 2]);
    }
    return v;
  };
  const auto p = column(pmm, n);
  LegendreValue out;
  out.p = p.back();
  if (m == 0) {
    // dP_n^0/dtheta = sqrt(n(n+1)) P_n^1
    if (n > 0) out.dp = std::sqrt(n * (n + 1.0)) * normalized_legendre(n, 1, theta).p;
    out.p_over_sin = 0.0;
    return out;
  }
  const auto u = column(umm, n);
  const double un = u.back();
  const double un1 = n > m ? u[u.size() - 2] : 0.0;
  out.p_over_sin = un;
  out.dp = n * x * un - std::sqrt((2.0 * n + 1.0) * (static_cast<double>(n) * n - static_cast<double>(m) * m) /
                                  (2.0 * n - 1.0)) * un1;
  return out;
}

/// Y_n^m with angular derivatives.
struct HarmonicValue {
  std::complex<double> value;
  std::complex<double> d_theta;
  std::complex<double> d_phi;
  std::complex<double> d_phi_over_sin; ///< (1/sin theta) dY/dphi, regular at the poles
};

inline HarmonicValue spherical_harmonic_full(int n, int m, double theta, double phi) {
  if (n < 0 || std::abs(m) > n) {
    throw IndexError("spherical_harmonic: need |m| <= n, got n=" + std::to_string(n) +
                     " m=" + std::to_string(m));
  }
  detail::check_finite(phi, "spherical_harmonic");
  const int am = std::abs(m);
  const auto leg = normalized_legendre(n, am, theta);
  const double sign = (m < 0 && am % 2 != 0) ? -1.0 : 1.0;
  const std::complex<double> e = std::polar(sign, m * phi);
  const std::complex<double> im(0.0, static_cast<double>(m));
  HarmonicValue h;
  h.value = leg.p * e;
  h.d_theta = leg.dp * e;
  h.d_phi = im * h.value;
  h.d_phi_over_sin = im * (leg.p_over_sin * e);
  return h;
}

inline std::complex<double> spherical_harmonic(int n, int m, double theta, double phi) {
  return spherical_harmonic_full(n, m, theta, phi).value;
}

} // namespace cavity
