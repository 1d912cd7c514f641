#pragma once

/**
 * @file d3q19.hpp
 * @brief D3Q19 velocity set and single-site BGK physics.
 *
 * Velocities are ordered rest, six axis directions, twelve face diagonals,
 * with each velocity immediately followed by its negation.
 *
 * All routines evaluate the equilibrium in the same canonical form,
 *
 *     cu   = cx*ux + cy*uy + cz*uz
 *     usq  = ux*ux + uy*uy + uz*uz
 *     feq  = w * rho * (1 + cu/cs2 + (cu*cu)/(2*cs2*cs2) - usq/(2*cs2))
 *
 * and sum populations in ascending velocity index, so a site processed here
 * and a site processed by the collision kernel agree bit for bit.
 */

#include <array>
#include <cstddef>
#include <span>

namespace ldp::lb {

inline constexpr std::size_t kQ = 19;

struct D3Q19Model {
  std::array<std::array<int, 3>, kQ> cv;
  std::array<double, kQ> wv;
  double cs2;
  double tau_f = 1.0;
  double tau_g = 1.0;
};

/// Standard D3Q19 set with the given relaxation times (each must exceed 0.5).
[[nodiscard]] D3Q19Model make_d3q19(double tau_f = 1.0, double tau_g = 1.0);

/// Index of the velocity -c_i.
[[nodiscard]] constexpr std::size_t opposite(std::size_t i) noexcept {
  return i == 0 ? 0 : ((i - 1) ^ 1u) + 1;
}

struct Moments {
  double rho = 0.0;
  std::array<double, 3> u{};
};

using Populations = std::array<double, kQ>;

/// rho = sum f_i, u = (sum f_i c_i) / rho. Throws SingularStateError when rho == 0.
[[nodiscard]] Moments moments(std::span<const double, kQ> f, const D3Q19Model& model);

/// Second-order equilibrium scaled by `density`.
[[nodiscard]] Populations equilibrium(double density, const std::array<double, 3>& u,
                                      const D3Q19Model& model);

/// f'_i = f_i - (f_i - feq_i) / tau. Throws ConfigError unless tau > 0.5.
[[nodiscard]] Populations bgk_relax(std::span<const double, kQ> f,
                                    std::span<const double, kQ> feq, double tau);

}  // namespace ldp::lb
