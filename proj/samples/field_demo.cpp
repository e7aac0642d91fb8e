// Evaluates the first TEM mode of a coaxial cavity along a radial line and
// writes a small structured grid of its electric field.
#include <cstdio>
#include <iostream>
#include <numbers>

#include "cavity/cavity.hpp"

int main() {
  using namespace cavity;
  const double length = std::numbers::pi;
  const CrossSection coax(Annulus{0.25, 1.0});
  const auto modes = build_modes(coax, length, WallConfig{}, 1.5);

  for (const auto &m : modes) {
    if (m.polarization != Polarization::TEM) continue;
    std::printf("%s  Lambda = %.17g\n", m.label().c_str(), m.Lambda);
    for (double r : {0.25, 0.5, 0.75, 1.0}) {
      const auto e = m.E({r, 0.0, 0.5 * length});
      std::printf("  r = %.2f  E_r = %.12f  (1/r = %.12f)\n", r, e[0].real(), 1.0 / r);
    }
    SampleGrid g{{-1.0, 1.0, 5}, {-1.0, 1.0, 5}, {0.5 * length, 0.5 * length, 1}};
    write_sgrid(std::cout, sample_field(m, FieldKind::E, g));
  }
  return 0;
}
