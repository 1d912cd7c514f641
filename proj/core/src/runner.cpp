#include "ldp/runner.hpp"

namespace ldp {

std::size_t arena_bytes_for(std::size_t ndoubles) noexcept {
  return 2 * ndoubles * sizeof(double) + (std::size_t{1} << 20);
}

namespace {

TargetDevice make_device(const RunConfig& config, std::size_t ndoubles) {
  DeviceOptions options;
  options.backend = config.backend;
  options.workers = config.workers;
  options.arena_bytes = arena_bytes_for(ndoubles);
  options.check_writes = config.check_writes;
  return TargetDevice(options);
}

LaunchPlan plan_for(const RunConfig& config, const FieldDescriptor& desc) {
  LaunchPlan plan{desc.padded_sites, config.vvl, config.workers, config.tpb};
  validate(plan);
  return plan;
}

}  // namespace

Field run_scale(const Field& field, double a, const RunConfig& config, std::size_t steps) {
  auto device = make_device(config, field.descriptor().size());
  auto t_field = target_malloc(device, field.descriptor());
  copy_to_target(t_field, field);
  upload_scale_factor(device, a);
  const auto plan = plan_for(config, field.descriptor());
  for (std::size_t step = 0; step < steps; ++step) {
    launch_scale(device, t_field, plan);
    sync_target(device);
  }
  Field out(field.descriptor());
  copy_from_target(out, t_field);
  target_free(t_field);
  return out;
}

BinaryFluidState run_binary_collision(const BinaryFluidState& state, const lb::D3Q19Model& model,
                                      const RunConfig& config, std::size_t steps) {
  const auto& desc = state.f.descriptor();
  auto device = make_device(config, 2 * desc.size());
  auto t_f = target_malloc(device, desc);
  auto t_g = target_malloc(device, state.g.descriptor());
  copy_to_target(t_f, state.f);
  copy_to_target(t_g, state.g);
  upload_model(device, model);
  const auto plan = plan_for(config, desc);
  for (std::size_t step = 0; step < steps; ++step) {
    launch_binary_collision(device, t_f, t_g, plan);
    sync_target(device);
  }
  BinaryFluidState out{Field(desc), Field(state.g.descriptor())};
  copy_from_target(out.f, t_f);
  copy_from_target(out.g, t_g);
  target_free(t_f);
  target_free(t_g);
  return out;
}

}  // namespace ldp
