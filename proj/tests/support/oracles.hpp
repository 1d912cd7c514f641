#pragma once

// Test-only reference implementations. These deliberately avoid the library's
// physics and transfer code paths: they are written directly from the
// defining formulas with plain loops over x, y, z.

#include <array>
#include <cstddef>
#include <vector>

#include "ldp/lattice.hpp"

namespace oracle {

// D3Q19 tables restated independently of the library.
inline constexpr int kCv[19][3] = {
    {0, 0, 0},  {1, 0, 0},   {-1, 0, 0}, {0, 1, 0},  {0, -1, 0}, {0, 0, 1},   {0, 0, -1},
    {1, 1, 0},  {-1, -1, 0}, {1, -1, 0}, {-1, 1, 0}, {1, 0, 1},  {-1, 0, -1}, {1, 0, -1},
    {-1, 0, 1}, {0, 1, 1},   {0, -1, -1}, {0, 1, -1}, {0, -1, 1}};

inline double weight(int i) {
  const int nonzero = (kCv[i][0] != 0) + (kCv[i][1] != 0) + (kCv[i][2] != 0);
  return nonzero == 0 ? 1.0 / 3.0 : nonzero == 1 ? 1.0 / 18.0 : 1.0 / 36.0;
}

// One BGK step for both distributions, site by site over a triple loop.
inline void collide(ldp::Field& f, ldp::Field& g, double tau_f, double tau_g) {
  const auto shape = f.descriptor().shape;
  const double cs2 = 1.0 / 3.0;
  for (std::size_t ix = 0; ix < shape.nx; ++ix) {
    for (std::size_t iy = 0; iy < shape.ny; ++iy) {
      for (std::size_t iz = 0; iz < shape.nz; ++iz) {
        const std::size_t s = shape.site(ix, iy, iz);
        double rho = 0.0, mx = 0.0, my = 0.0, mz = 0.0, phi = 0.0;
        for (int i = 0; i < 19; ++i) {
          const double fi = f(i, s);
          rho += fi;
          mx += fi * double(kCv[i][0]);
          my += fi * double(kCv[i][1]);
          mz += fi * double(kCv[i][2]);
          phi += g(i, s);
        }
        const double ux = mx / rho;
        const double uy = my / rho;
        const double uz = mz / rho;
        const double usq = ux * ux + uy * uy + uz * uz;
        for (int i = 0; i < 19; ++i) {
          const double cu = double(kCv[i][0]) * ux + double(kCv[i][1]) * uy + double(kCv[i][2]) * uz;
          const double bracket =
              1.0 + cu / cs2 + (cu * cu) / (2.0 * cs2 * cs2) - usq / (2.0 * cs2);
          const double feq = weight(i) * rho * bracket;
          const double geq = weight(i) * phi * bracket;
          f(i, s) = f(i, s) - (f(i, s) - feq) / tau_f;
          g(i, s) = g(i, s) - (g(i, s) - geq) / tau_g;
        }
      }
    }
  }
}

// Masked copy as a per-element loop: dst(c, s) = src(c, s) where mask[s].
inline void masked_copy(ldp::Field& dst, const ldp::Field& src, const std::vector<bool>& mask) {
  for (std::size_t c = 0; c < src.ncomp(); ++c) {
    for (std::size_t s = 0; s < src.nsites(); ++s) {
      if (mask[s]) {
        dst(c, s) = src(c, s);
      }
    }
  }
}

}  // namespace oracle
