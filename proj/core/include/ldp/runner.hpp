#pragma once

// Host-to-host helpers: allocate on a fresh device, copy in, run `steps`
// launches, copy out. Used by verification suites and tests.

#include <cstddef>

#include "ldp/kernels.hpp"

namespace ldp {

struct RunConfig {
  Backend backend = Backend::reference;
  std::size_t vvl = 1;
  std::size_t workers = 1;
  std::size_t tpb = kDefaultTpb;
  bool check_writes = false;
};

[[nodiscard]] Field run_scale(const Field& field, double a, const RunConfig& config,
                              std::size_t steps = 1);

[[nodiscard]] BinaryFluidState run_binary_collision(const BinaryFluidState& state,
                                                    const lb::D3Q19Model& model,
                                                    const RunConfig& config,
                                                    std::size_t steps = 1);

/// Arena size an emulated device needs to hold `ndoubles` of buffers plus
/// masked-copy scratch.
[[nodiscard]] std::size_t arena_bytes_for(std::size_t ndoubles) noexcept;

}  // namespace ldp
