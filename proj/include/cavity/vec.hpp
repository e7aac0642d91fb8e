#pragma once

#include <array>
#include <cmath>
#include <complex>

namespace cavity {

using complex = std::complex<double>;

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  constexpr double operator[](int i) const { return i == 0 ? x : (i == 1 ? y : z); }
  constexpr double &operator[](int i) { return i == 0 ? x : (i == 1 ? y : z); }
  constexpr Vec2 perp() const { return {x, y}; }
};

inline constexpr Vec3 operator+(Vec3 a, Vec3 b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
inline constexpr Vec3 operator-(Vec3 a, Vec3 b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
inline constexpr Vec3 operator*(double s, Vec3 a) { return {s * a.x, s * a.y, s * a.z}; }
inline constexpr double dot(Vec3 a, Vec3 b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline double norm(Vec3 a) { return std::sqrt(dot(a, a)); }

/// Complex 3-vector holding time-harmonic field values in Cartesian components.
struct CVec3 {
  std::array<complex, 3> c{};

  constexpr complex operator[](int i) const { return c[static_cast<std::size_t>(i)]; }
  constexpr complex &operator[](int i) { return c[static_cast<std::size_t>(i)]; }

  CVec3 &operator+=(const CVec3 &o) {
    for (int i = 0; i < 3; ++i) c[i] += o.c[i];
    return *this;
  }
  CVec3 &operator-=(const CVec3 &o) {
    for (int i = 0; i < 3; ++i) c[i] -= o.c[i];
    return *this;
  }
  CVec3 &operator*=(complex s) {
    for (auto &v : c) v *= s;
    return *this;
  }
};

inline CVec3 operator+(CVec3 a, const CVec3 &b) { return a += b; }
inline CVec3 operator-(CVec3 a, const CVec3 &b) { return a -= b; }
inline CVec3 operator*(complex s, CVec3 a) { return a *= s; }
inline CVec3 operator*(double s, CVec3 a) { return a *= complex(s, 0.0); }

inline double norm(const CVec3 &a) {
  return std::sqrt(std::norm(a[0]) + std::norm(a[1]) + std::norm(a[2]));
}

/// Sesquilinear product sum_i a_i * conj(b_i).
inline complex inner(const CVec3 &a, const CVec3 &b) {
  return a[0] * std::conj(b[0]) + a[1] * std::conj(b[1]) + a[2] * std::conj(b[2]);
}

/// a x n for a complex field value and a real unit normal.
inline CVec3 cross(const CVec3 &a, Vec3 n) {
  return CVec3{{a[1] * n.z - a[2] * n.y, a[2] * n.x - a[0] * n.z, a[0] * n.y - a[1] * n.x}};
}

inline complex dot(const CVec3 &a, Vec3 n) { return a[0] * n.x + a[1] * n.y + a[2] * n.z; }

inline CVec3 real_vec(double x, double y, double z) {
  return CVec3{{complex(x, 0.0), complex(y, 0.0), complex(z, 0.0)}};
}

/// Cylindrical components (u_r, u_phi, u_3) of a Cartesian field value at azimuth phi.
inline CVec3 to_cylindrical(const CVec3 &u, double phi) {
  const double c = std::cos(phi), s = std::sin(phi);
  return CVec3{{u[0] * c + u[1] * s, -u[0] * s + u[1] * c, u[2]}};
}

/// Cartesian components from spherical components ordered (theta, phi, rho).
inline CVec3 from_spherical(complex u_theta, complex u_phi, complex u_rho, double theta,
                            double phi) {
  const double st = std::sin(theta), ct = std::cos(theta);
  const double sp = std::sin(phi), cp = std::cos(phi);
  // rho_hat = (st cp, st sp, ct); theta_hat = (ct cp, ct sp, -st); phi_hat = (-sp, cp, 0)
  return CVec3{{u_rho * (st * cp) + u_theta * (ct * cp) - u_phi * sp,
                u_rho * (st * sp) + u_theta * (ct * sp) + u_phi * cp,
                u_rho * ct - u_theta * st}};
}

} // namespace cavity
