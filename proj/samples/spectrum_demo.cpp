// Prints the lowest Maxwell eigenvalues of a circular cylinder of radius 1
// and length pi, then the same cavity on a staircase grid.
#include <cstdio>
#include <numbers>

#include "cavity/cavity.hpp"

int main() {
  using namespace cavity;
  const double length = std::numbers::pi;

  const auto exact = spectrum_table(CrossSection(Disc{1.0}), length, WallConfig{}, 12.0, 1e-9);
  std::printf("analytic disc x (0, pi)\n%s\n", exact.to_csv().c_str());

  const auto grid = spectrum_table(CrossSection(GridMask::disc(1.0, 1.0 / 32)), length, WallConfig{}, 12.0, 1e-6);
  std::printf("grid h = 1/32\n");
  for (const auto &e : grid.entries) std::printf("%10.6f  x%d  %s\n", e.Lambda, e.multiplicity, e.contributors[0].family.c_str());
  return 0;
}
