#include "ldp/execution.hpp"

#include <algorithm>
#include <cstring>

#include "device_state.hpp"
#include "ldp/error.hpp"

namespace ldp {

void validate(const LaunchPlan& plan) {
  if (plan.vvl == 0) {
    throw PlanError("VVL must be >= 1");
  }
  if (plan.vvl > kMaxLanes) {
    throw PlanError("VVL " + std::to_string(plan.vvl) + " exceeds the maximum of " +
                    std::to_string(kMaxLanes));
  }
  if (plan.workers == 0) {
    throw PlanError("worker count must be >= 1");
  }
  if (plan.tpb == 0) {
    throw PlanError("TPB must be >= 1");
  }
  if (plan.extent == 0) {
    throw PlanError("launch extent must be >= 1");
  }
  if (plan.extent % plan.vvl != 0) {
    throw PlanError("VVL must divide padded extent (VVL " + std::to_string(plan.vvl) +
                    ", extent " + std::to_string(plan.extent) + ")");
  }
}

LaunchPlan make_plan(const TargetDevice& device, const FieldDescriptor& desc, std::size_t vvl,
                     std::size_t tpb) {
  LaunchPlan plan{desc.padded_sites, vvl, device.workers(), tpb};
  validate(plan);
  return plan;
}

std::size_t group_count(const LaunchPlan& plan) {
  validate(plan);
  return (plan.chunk_count() + plan.tpb - 1) / plan.tpb;
}

Schedule backend_schedule(Backend backend, const LaunchPlan& plan) {
  validate(plan);
  const std::size_t chunks = plan.chunk_count();
  Schedule schedule;
  switch (backend) {
    case Backend::reference:
      schedule.per_worker.push_back({ChunkRange{0, chunks}});
      break;
    case Backend::threaded: {
      const std::size_t workers = plan.workers;
      schedule.per_worker.resize(workers);
      const std::size_t base = chunks / workers;
      const std::size_t extra = chunks % workers;
      std::size_t next = 0;
      for (std::size_t w = 0; w < workers; ++w) {
        const std::size_t take = base + (w < extra ? 1 : 0);
        if (take > 0) {
          schedule.per_worker[w].push_back({next, next + take});
        }
        next += take;
      }
      break;
    }
    case Backend::emulated: {
      schedule.per_worker.resize(plan.workers);
      const std::size_t groups = (chunks + plan.tpb - 1) / plan.tpb;
      for (std::size_t g = 0; g < groups; ++g) {
        const std::size_t begin = g * plan.tpb;
        schedule.per_worker[g % plan.workers].push_back(
            {begin, std::min(begin + plan.tpb, chunks)});
      }
      break;
    }
  }
  return schedule;
}

namespace detail {
namespace {

// Debug execution: chunks run one at a time; after each, every writable buffer
// is compared against a shadow copy outside the chunk's site range.
void run_checked(const Schedule& schedule, const LaunchPlan& plan, const LaunchView& view,
                 const ChunkFn& run) {
  struct Shadow {
    std::size_t slot;
    const double* live;
    std::vector<double> copy;
    std::size_t stride;
    std::size_t ncomp;
  };
  std::vector<Shadow> shadows;
  for (std::size_t slot = 0; slot < view.data.size(); ++slot) {
    if (!view.writable[slot]) {
      continue;
    }
    const std::size_t n = view.stride[slot] * view.ncomp[slot];
    shadows.push_back({slot, view.data[slot],
                       std::vector<double>(view.data[slot], view.data[slot] + n),
                       view.stride[slot], view.ncomp[slot]});
  }

  for (const auto& ranges : schedule.per_worker) {
    for (const auto& range : ranges) {
      for (std::size_t chunk = range.begin; chunk < range.end; ++chunk) {
        run({chunk, chunk + 1});
        const std::size_t lo = chunk * plan.vvl;
        const std::size_t hi = lo + plan.vvl;
        for (auto& sh : shadows) {
          for (std::size_t c = 0; c < sh.ncomp; ++c) {
            const double* live = sh.live + c * sh.stride;
            double* copy = sh.copy.data() + c * sh.stride;
            for (std::size_t s = 0; s < sh.stride; ++s) {
              if (s == lo) {
                s = hi - 1;
                continue;
              }
              if (std::memcmp(live + s, copy + s, sizeof(double)) != 0) {
                throw ContractViolation(
                    "kernel invocation for chunk " + std::to_string(chunk) + " (sites [" +
                    std::to_string(lo) + ", " + std::to_string(hi) + ")) wrote site " +
                    std::to_string(s) + ", component " + std::to_string(c) +
                    " of buffer slot " + std::to_string(sh.slot));
              }
            }
            std::memcpy(copy + lo, live + lo, plan.vvl * sizeof(double));
          }
        }
      }
    }
  }
}

}  // namespace

LaunchView prepare_launch(TargetDevice& device, const LaunchPlan& plan, const LaunchArgs& args) {
  validate(plan);
  LaunchView view;
  for (std::size_t slot = 0; slot < args.buffers.size(); ++slot) {
    const auto& arg = args.buffers[slot];
    if (arg.buffer == nullptr) {
      throw PlanError("buffer slot " + std::to_string(slot) + " is empty");
    }
    double* data = arg.buffer->data();  // LifecycleError when freed
    if (arg.buffer->device_id() != device.id()) {
      throw DeviceError("buffer slot " + std::to_string(slot) +
                        " belongs to a different device");
    }
    const auto& desc = arg.buffer->descriptor();
    if (plan.extent > desc.padded_sites) {
      throw PlanError("launch extent " + std::to_string(plan.extent) +
                      " exceeds the padded sites (" + std::to_string(desc.padded_sites) +
                      ") of buffer slot " + std::to_string(slot));
    }
    view.data.push_back(data);
    view.writable.push_back(arg.writable);
    view.stride.push_back(desc.padded_sites);
    view.ncomp.push_back(desc.ncomp);
    view.nsites.push_back(desc.nsites());
  }
  for (const auto& key : args.constants) {
    const auto* entry = device.constants().find(key);
    if (entry == nullptr) {
      throw ConfigError("launch needs constant '" + key + "', which is not set on the device");
    }
    view.constants.push_back(entry);
  }
  return view;
}

LaunchHandle submit_launch(TargetDevice& device, const LaunchPlan& plan,
                           std::shared_ptr<const LaunchView> view, ChunkFn run) {
  auto& state = device.state();
  // Launches on one device never overlap: finish the previous one first.
  state.drain();

  auto schedule = std::make_shared<const Schedule>(backend_schedule(state.options.backend, plan));
  const LaunchHandle handle{state.stats.launches++};
  state.in_flight = true;

  if (state.options.check_writes) {
    try {
      run_checked(*schedule, plan, *view, run);
    } catch (...) {
      state.record_error(std::current_exception());
    }
    return handle;
  }

  if (state.options.backend == Backend::reference) {
    try {
      for (const auto& range : schedule->per_worker.front()) {
        run(range);
      }
    } catch (...) {
      state.record_error(std::current_exception());
    }
    return handle;
  }

  auto& pool = state.pool(plan.workers);
  pool.submit([&state, schedule, view = std::move(view), run = std::move(run)](std::size_t w) {
    try {
      for (const auto& range : schedule->per_worker[w]) {
        run(range);
      }
    } catch (...) {
      state.record_error(std::current_exception());
    }
  });
  return handle;
}

}  // namespace detail

void sync_target(TargetDevice& device) {
  auto& state = device.state();
  state.drain();
  state.in_flight = false;
  if (auto error = state.take_error()) {
    std::rethrow_exception(error);
  }
}

}  // namespace ldp
