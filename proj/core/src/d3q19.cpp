#include "ldp/d3q19.hpp"

#include <string>

#include "ldp/error.hpp"

namespace ldp::lb {
namespace {

void require_tau(double tau, const char* name) {
  if (!(tau > 0.5)) {
    throw ConfigError(std::string(name) + " must exceed 0.5, got " + std::to_string(tau));
  }
}

}  // namespace

D3Q19Model make_d3q19(double tau_f, double tau_g) {
  require_tau(tau_f, "tau_f");
  require_tau(tau_g, "tau_g");

  constexpr double w_rest = 1.0 / 3.0;
  constexpr double w_axis = 1.0 / 18.0;
  constexpr double w_diag = 1.0 / 36.0;

  D3Q19Model model{
      .cv = {{{0, 0, 0},
              {1, 0, 0},  {-1, 0, 0},  {0, 1, 0},  {0, -1, 0}, {0, 0, 1},   {0, 0, -1},
              {1, 1, 0},  {-1, -1, 0}, {1, -1, 0}, {-1, 1, 0}, {1, 0, 1},   {-1, 0, -1},
              {1, 0, -1}, {-1, 0, 1},  {0, 1, 1},  {0, -1, -1}, {0, 1, -1}, {0, -1, 1}}},
      .wv = {w_rest, w_axis, w_axis, w_axis, w_axis, w_axis, w_axis, w_diag, w_diag, w_diag,
             w_diag, w_diag, w_diag, w_diag, w_diag, w_diag, w_diag, w_diag, w_diag},
      .cs2 = 1.0 / 3.0,
      .tau_f = tau_f,
      .tau_g = tau_g,
  };
  return model;
}

Moments moments(std::span<const double, kQ> f, const D3Q19Model& model) {
  Moments m;
  double mx = 0.0;
  double my = 0.0;
  double mz = 0.0;
  for (std::size_t i = 0; i < kQ; ++i) {
    m.rho += f[i];
    mx += f[i] * static_cast<double>(model.cv[i][0]);
    my += f[i] * static_cast<double>(model.cv[i][1]);
    mz += f[i] * static_cast<double>(model.cv[i][2]);
  }
  if (m.rho == 0.0) {
    throw SingularStateError("zero density: velocity undefined");
  }
  m.u = {mx / m.rho, my / m.rho, mz / m.rho};
  return m;
}

Populations equilibrium(double density, const std::array<double, 3>& u,
                        const D3Q19Model& model) {
  const double cs2 = model.cs2;
  const double usq = u[0] * u[0] + u[1] * u[1] + u[2] * u[2];
  Populations feq;
  for (std::size_t i = 0; i < kQ; ++i) {
    const double cu = static_cast<double>(model.cv[i][0]) * u[0] +
                      static_cast<double>(model.cv[i][1]) * u[1] +
                      static_cast<double>(model.cv[i][2]) * u[2];
    feq[i] = model.wv[i] * density *
             (1.0 + cu / cs2 + (cu * cu) / (2.0 * cs2 * cs2) - usq / (2.0 * cs2));
  }
  return feq;
}

Populations bgk_relax(std::span<const double, kQ> f, std::span<const double, kQ> feq,
                      double tau) {
  require_tau(tau, "tau");
  Populations out;
  for (std::size_t i = 0; i < kQ; ++i) {
    out[i] = f[i] - (f[i] - feq[i]) / tau;
  }
  return out;
}

}  // namespace ldp::lb
