#include "ldp/kernels.hpp"

#include <random>

namespace ldp {

void upload_scale_factor(TargetDevice& device, double a) {
  constant_set_double(device, keys::kScale, a);
}

void upload_model(TargetDevice& device, const lb::D3Q19Model& model) {
  std::array<double, lb::kQ * 3> cv{};
  for (std::size_t i = 0; i < lb::kQ; ++i) {
    for (std::size_t d = 0; d < 3; ++d) {
      cv[3 * i + d] = static_cast<double>(model.cv[i][d]);
    }
  }
  const std::array<std::size_t, 1> wdims{lb::kQ};
  const std::array<std::size_t, 2> cdims{lb::kQ, 3};
  constant_set_double_array(device, keys::kWeights, model.wv, wdims);
  constant_set_double_array(device, keys::kVelocities, cv, cdims);
  constant_set_double(device, keys::kSoundSpeed2, model.cs2);
  constant_set_double(device, keys::kTauF, model.tau_f);
  constant_set_double(device, keys::kTauG, model.tau_g);
}

LaunchHandle launch_scale(TargetDevice& device, TargetBuffer& field, const LaunchPlan& plan) {
  if (field.descriptor().ncomp != 3) {
    throw ShapeError("scale kernel needs a 3-component field, got " +
                     std::to_string(field.descriptor().ncomp));
  }
  return launch(device, plan, {{inout(field)}, {keys::kScale}}, ScaleKernel{});
}

LaunchHandle launch_binary_collision(TargetDevice& device, TargetBuffer& f, TargetBuffer& g,
                                     const LaunchPlan& plan) {
  if (f.descriptor().ncomp != lb::kQ || g.descriptor().ncomp != lb::kQ) {
    throw ShapeError("binary collision needs 19-component f and g buffers");
  }
  if (f.descriptor() != g.descriptor()) {
    throw ShapeError("binary collision needs f and g on the same lattice");
  }
  return launch(device, plan,
                {{inout(f), inout(g)},
                 {keys::kWeights, keys::kVelocities, keys::kSoundSpeed2, keys::kTauF,
                  keys::kTauG}},
                BinaryCollisionKernel{});
}

BinaryFluidState random_binary_state(const LatticeShape& shape, std::uint64_t seed,
                                     std::size_t pad_multiple) {
  const auto model = lb::make_d3q19();
  const auto desc = make_descriptor(shape, lb::kQ, pad_multiple);
  BinaryFluidState state{Field(desc), Field(desc)};

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> density(0.8, 1.2);
  std::uniform_real_distribution<double> velocity(-0.05, 0.05);
  std::uniform_real_distribution<double> order(-1.0, 1.0);
  std::uniform_real_distribution<double> jitter(-0.05, 0.05);

  for (std::size_t s = 0; s < shape.nsites(); ++s) {
    const double rho = density(rng);
    const std::array<double, 3> u{velocity(rng), velocity(rng), velocity(rng)};
    const double phi = order(rng);
    const auto feq = lb::equilibrium(rho, u, model);
    const auto geq = lb::equilibrium(phi, u, model);
    for (std::size_t i = 0; i < lb::kQ; ++i) {
      state.f(i, s) = feq[i] * (1.0 + jitter(rng));
      state.g(i, s) = geq[i] * (1.0 + jitter(rng));
    }
  }
  return state;
}

BinaryFluidState equilibrium_state(const LatticeShape& shape, double rho,
                                   const std::array<double, 3>& u, double phi,
                                   std::size_t pad_multiple) {
  const auto model = lb::make_d3q19();
  const auto desc = make_descriptor(shape, lb::kQ, pad_multiple);
  BinaryFluidState state{Field(desc), Field(desc)};
  const auto feq = lb::equilibrium(rho, u, model);
  const auto geq = lb::equilibrium(phi, u, model);
  for (std::size_t i = 0; i < lb::kQ; ++i) {
    for (std::size_t s = 0; s < shape.nsites(); ++s) {
      state.f(i, s) = feq[i];
      state.g(i, s) = geq[i];
    }
  }
  return state;
}

Field random_vector_field(const LatticeShape& shape, std::uint64_t seed,
                          std::size_t pad_multiple) {
  Field field(make_descriptor(shape, 3, pad_multiple));
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> value(-1.0, 1.0);
  field_fill(field, [&](std::size_t, std::size_t) { return value(rng); });
  return field;
}

Observables compute_observables(const BinaryFluidState& state, const lb::D3Q19Model& model) {
  const auto& shape = state.f.descriptor().shape;
  const std::size_t pad = state.f.padded_sites();
  Observables obs{Field(FieldDescriptor{shape, 1, pad}), Field(FieldDescriptor{shape, 3, pad}),
                  Field(FieldDescriptor{shape, 1, pad})};
  lb::Populations f;
  for (std::size_t s = 0; s < shape.nsites(); ++s) {
    double phi = 0.0;
    for (std::size_t i = 0; i < lb::kQ; ++i) {
      f[i] = state.f(i, s);
      phi += state.g(i, s);
    }
    const auto m = lb::moments(f, model);
    obs.rho(0, s) = m.rho;
    for (std::size_t d = 0; d < 3; ++d) {
      obs.u(d, s) = m.u[d];
    }
    obs.phi(0, s) = phi;
  }
  return obs;
}

}  // namespace ldp
