#pragma once

/**
 * @file kernels.hpp
 * @brief Framework workloads: 3-vector scaling and a D3Q19 two-distribution
 *        BGK collision.
 *
 * The collision relaxes a mass/momentum distribution `f` and an
 * order-parameter distribution `g` toward second-order equilibria that share
 * the velocity of `f`. Each site reads 2 x 19 values and writes 2 x 19 values;
 * the inner loops run over the 19 velocities and the 3 spatial dimensions,
 * with the VVL lane loop innermost.
 *
 * Constants read from the device store:
 *
 * | key     | kind          | contents                     |
 * |---------|---------------|------------------------------|
 * | `a`     | double        | scale factor                 |
 * | `wv`    | double[19]    | D3Q19 weights                |
 * | `cv`    | double[19][3] | D3Q19 velocities             |
 * | `cs2`   | double        | squared sound speed          |
 * | `tau_f` | double        | relaxation time of f         |
 * | `tau_g` | double        | relaxation time of g         |
 */

#include <array>
#include <cstddef>
#include <cstdint>

#include "ldp/d3q19.hpp"
#include "ldp/error.hpp"
#include "ldp/execution.hpp"

namespace ldp {

namespace keys {
inline constexpr const char* kScale = "a";
inline constexpr const char* kWeights = "wv";
inline constexpr const char* kVelocities = "cv";
inline constexpr const char* kSoundSpeed2 = "cs2";
inline constexpr const char* kTauF = "tau_f";
inline constexpr const char* kTauG = "tau_g";
}  // namespace keys

/// out(c, s) = a * in(c, s) for the three components of slot 0, in place.
struct ScaleKernel {
  template <class Ctx>
  void operator()(const Ctx& ctx) const {
    const double a = ctx.constant(0).as_double();
    double* field = ctx.out(0);
    const std::size_t stride = ctx.stride(0);
    for (std::size_t c = 0; c < 3; ++c) {
      double* comp = field + c * stride + ctx.base_index();
      ctx.for_each_lane([&](std::size_t v) { comp[v] = a * comp[v]; });
    }
  }
};

/// Two BGK relaxations sharing the velocity of f, in place on slots 0 (f) and 1 (g).
struct BinaryCollisionKernel {
  template <class Ctx>
  void operator()(const Ctx& ctx) const {
    using lanes = typename Ctx::template lane_array<double>;

    const double* wv = ctx.constant(0).doubles().data();
    const double* cv = ctx.constant(1).doubles().data();
    const double cs2 = ctx.constant(2).as_double();
    const double tau_f = ctx.constant(3).as_double();
    const double tau_g = ctx.constant(4).as_double();

    double* f = ctx.out(0);
    double* g = ctx.out(1);
    const std::size_t stride = ctx.stride(0);
    const std::size_t base = ctx.base_index();

    lanes rho{};
    lanes mx{};
    lanes my{};
    lanes mz{};
    lanes phi{};
    for (std::size_t i = 0; i < lb::kQ; ++i) {
      const double* fi = f + i * stride + base;
      const double* gi = g + i * stride + base;
      const double cx = cv[3 * i];
      const double cy = cv[3 * i + 1];
      const double cz = cv[3 * i + 2];
      ctx.for_each_lane([&](std::size_t v) {
        rho[v] += fi[v];
        mx[v] += fi[v] * cx;
        my[v] += fi[v] * cy;
        mz[v] += fi[v] * cz;
        phi[v] += gi[v];
      });
    }

    // Padding lanes carry zero density; only real sites must be admissible.
    const std::size_t real = ctx.nsites(0);
    bool singular = false;
    ctx.for_each_lane([&](std::size_t v) { singular |= (base + v < real) && !(rho[v] > 0.0); });
    if (singular) {
      throw SingularStateError("non-positive density in chunk at site " + std::to_string(base));
    }

    lanes ux;
    lanes uy;
    lanes uz;
    lanes usq;
    ctx.for_each_lane([&](std::size_t v) {
      ux[v] = mx[v] / rho[v];
      uy[v] = my[v] / rho[v];
      uz[v] = mz[v] / rho[v];
      usq[v] = ux[v] * ux[v] + uy[v] * uy[v] + uz[v] * uz[v];
    });

    for (std::size_t i = 0; i < lb::kQ; ++i) {
      double* fi = f + i * stride + base;
      double* gi = g + i * stride + base;
      const double w = wv[i];
      const double cx = cv[3 * i];
      const double cy = cv[3 * i + 1];
      const double cz = cv[3 * i + 2];
      ctx.for_each_lane([&](std::size_t v) {
        const double cu = cx * ux[v] + cy * uy[v] + cz * uz[v];
        const double bracket =
            1.0 + cu / cs2 + (cu * cu) / (2.0 * cs2 * cs2) - usq[v] / (2.0 * cs2);
        const double feq = w * rho[v] * bracket;
        const double geq = w * phi[v] * bracket;
        fi[v] = fi[v] - (fi[v] - feq) / tau_f;
        gi[v] = gi[v] - (gi[v] - geq) / tau_g;
      });
    }
  }
};

/// Sets `a` on the device.
void upload_scale_factor(TargetDevice& device, double a);

/// Sets wv, cv, cs2, tau_f and tau_g on the device.
void upload_model(TargetDevice& device, const lb::D3Q19Model& model);

/// Scales a 3-component buffer in place. Throws ShapeError when ncomp != 3.
LaunchHandle launch_scale(TargetDevice& device, TargetBuffer& field, const LaunchPlan& plan);

/// One collision step on 19-component buffers f and g of identical shape.
LaunchHandle launch_binary_collision(TargetDevice& device, TargetBuffer& f, TargetBuffer& g,
                                     const LaunchPlan& plan);

struct BinaryFluidState {
  Field f;
  Field g;
};

/// Random admissible state: each site near equilibrium with density in
/// [0.8, 1.2], |u| components below 0.05, phi in [-1, 1], plus a relative
/// perturbation of up to 5% per population. Deterministic in `seed`.
[[nodiscard]] BinaryFluidState random_binary_state(const LatticeShape& shape, std::uint64_t seed,
                                                   std::size_t pad_multiple = kDefaultPadMultiple);

/// Every site at equilibrium(rho, u) for f and the phi-scaled equilibrium for g.
[[nodiscard]] BinaryFluidState equilibrium_state(const LatticeShape& shape, double rho,
                                                 const std::array<double, 3>& u, double phi,
                                                 std::size_t pad_multiple = kDefaultPadMultiple);

/// Random 3-component field with values in [-1, 1].
[[nodiscard]] Field random_vector_field(const LatticeShape& shape, std::uint64_t seed,
                                        std::size_t pad_multiple = kDefaultPadMultiple);

struct Observables {
  Field rho;  // 1 component
  Field u;    // 3 components
  Field phi;  // 1 component
};

/// Per-site density, velocity and order parameter of a state.
[[nodiscard]] Observables compute_observables(const BinaryFluidState& state,
                                              const lb::D3Q19Model& model);

}  // namespace ldp
