#pragma once

/**
 * @file execution.hpp
 * @brief Two-level execution: strip-mined chunks across workers, lanes within a chunk.
 *
 * A launch covers `extent` sites. The site loop is strip-mined into
 * `extent / vvl` chunks of `vvl` consecutive sites (the virtual vector
 * length). Chunks are distributed over workers (thread-level parallelism);
 * inside a chunk the kernel runs fixed-trip-count lane loops over
 * `for_each_lane` that the compiler can map onto SIMD instructions
 * (instruction-level parallelism).
 *
 * Kernels are callables invoked once per chunk with a `KernelContext<L>`.
 * The lane count L is a compile-time constant for the common VVLs
 * (1, 2, 4, 8, 16, 32) and 0 (runtime lane count) otherwise, so a kernel is
 * normally written as a generic lambda:
 *
 * ```cpp
 * ldp::launch(device, plan, {{ldp::inout(t_field)}, {"a"}}, [](const auto& ctx) {
 *   const double a = ctx.constant(0).as_double();
 *   double* f = ctx.out(0);
 *   for (std::size_t c = 0; c < 3; ++c) {
 *     double* comp = f + c * ctx.stride(0) + ctx.base_index();
 *     ctx.for_each_lane([&](std::size_t v) { comp[v] = a * comp[v]; });
 *   }
 * });
 * ldp::sync_target(device);
 * ```
 *
 * Contract for kernels: an invocation writes only sites
 * [base_index, base_index + vvl) of its writable buffers, and no lane reads a
 * value another lane of the same launch writes. Under that contract results
 * are bitwise identical for every backend, worker count and legal VVL.
 */

#include <array>
#include <cassert>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "ldp/target_memory.hpp"

namespace ldp {

inline constexpr std::size_t kDefaultTpb = 128;

/// Largest lane count a launch accepts; bounds per-chunk lane arrays.
inline constexpr std::size_t kMaxLanes = 256;

struct LaunchPlan {
  std::size_t extent = 0;
  std::size_t vvl = 1;
  std::size_t workers = 1;
  std::size_t tpb = kDefaultTpb;

  [[nodiscard]] constexpr std::size_t chunk_count() const noexcept {
    return vvl == 0 ? 0 : extent / vvl;
  }
};

/// Throws PlanError unless the plan is self-consistent.
void validate(const LaunchPlan& plan);

/// Plan over the full padded extent of `desc`, workers taken from `device`.
[[nodiscard]] LaunchPlan make_plan(const TargetDevice& device, const FieldDescriptor& desc,
                                   std::size_t vvl, std::size_t tpb = kDefaultTpb);

/// Worker groups of tpb chunks each: ((extent / vvl) + tpb - 1) / tpb.
[[nodiscard]] std::size_t group_count(const LaunchPlan& plan);

struct ChunkRange {
  std::size_t begin = 0;
  std::size_t end = 0;

  friend constexpr bool operator==(const ChunkRange&, const ChunkRange&) = default;
};

/// Chunk ranges assigned to each worker, in execution order.
struct Schedule {
  std::vector<std::vector<ChunkRange>> per_worker;
};

/// reference: one worker, all chunks in order. threaded: static block
/// partition over plan.workers, the first (chunks % workers) workers taking one
/// extra. emulated: groups of tpb chunks, group g on worker g % workers.
[[nodiscard]] Schedule backend_schedule(Backend backend, const LaunchPlan& plan);

struct BufferArg {
  const TargetBuffer* buffer = nullptr;
  bool writable = false;
};

[[nodiscard]] inline BufferArg in(const TargetBuffer& buffer) noexcept { return {&buffer, false}; }
[[nodiscard]] inline BufferArg inout(TargetBuffer& buffer) noexcept { return {&buffer, true}; }

/// Buffers and constant keys bound to a launch; kernels address both by slot.
struct LaunchArgs {
  std::vector<BufferArg> buffers;
  std::vector<std::string> constants;
};

struct LaunchHandle {
  std::uint64_t sequence = 0;
};

namespace detail {

// Launch bindings resolved once and shared by all chunk invocations.
struct LaunchView {
  std::vector<double*> data;
  std::vector<bool> writable;
  std::vector<std::size_t> stride;
  std::vector<std::size_t> ncomp;
  std::vector<std::size_t> nsites;
  std::vector<const ConstantEntry*> constants;
};

using ChunkFn = std::function<void(ChunkRange)>;

LaunchView prepare_launch(TargetDevice& device, const LaunchPlan& plan, const LaunchArgs& args);
LaunchHandle submit_launch(TargetDevice& device, const LaunchPlan& plan,
                           std::shared_ptr<const LaunchView> view, ChunkFn run);

}  // namespace detail

/// Per-chunk view handed to kernels. `Lanes` is the compile-time lane count, or
/// 0 when the lane count is only known at run time.
template <std::size_t Lanes>
class KernelContext {
 public:
  static constexpr std::size_t static_lanes = Lanes;

  /// Per-lane scratch for values carried between lane loops of one chunk.
  template <class T>
  using lane_array = std::array<T, Lanes != 0 ? Lanes : kMaxLanes>;

  KernelContext(const detail::LaunchView& view, std::size_t base, std::size_t vvl) noexcept
      : view_(&view), base_(base), vvl_(vvl) {}

  [[nodiscard]] std::size_t base_index() const noexcept { return base_; }

  [[nodiscard]] constexpr std::size_t vvl() const noexcept {
    if constexpr (Lanes != 0) {
      return Lanes;
    } else {
      return vvl_;
    }
  }

  /// Start of the whole buffer bound at `slot`; element (c, s) is at c * stride + s.
  [[nodiscard]] const double* in(std::size_t slot) const noexcept { return view_->data[slot]; }

  [[nodiscard]] double* out(std::size_t slot) const noexcept {
    assert(view_->writable[slot] && "buffer bound read-only");
    return view_->data[slot];
  }

  /// Padded site count of the buffer at `slot`.
  [[nodiscard]] std::size_t stride(std::size_t slot) const noexcept { return view_->stride[slot]; }
  [[nodiscard]] std::size_t ncomp(std::size_t slot) const noexcept { return view_->ncomp[slot]; }
  /// Real (unpadded) site count of the buffer at `slot`.
  [[nodiscard]] std::size_t nsites(std::size_t slot) const noexcept { return view_->nsites[slot]; }

  [[nodiscard]] const ConstantEntry& constant(std::size_t slot) const noexcept {
    return *view_->constants[slot];
  }

  /// The lane loop: body(v) for v = 0 .. vvl-1. Bodies must be lane-independent.
  template <class Body>
  void for_each_lane(Body&& body) const {
    const std::size_t n = vvl();
    for (std::size_t v = 0; v < n; ++v) {
      body(v);
    }
  }

 private:
  const detail::LaunchView* view_;
  std::size_t base_;
  std::size_t vvl_;
};

template <std::size_t Lanes, class Body>
void for_each_lane(const KernelContext<Lanes>& ctx, Body&& body) {
  ctx.for_each_lane(std::forward<Body>(body));
}

namespace detail {

template <std::size_t Lanes, class Kernel>
ChunkFn bind_lanes(std::shared_ptr<const LaunchView> view, std::size_t vvl, Kernel kernel) {
  return [view = std::move(view), vvl, kernel = std::move(kernel)](ChunkRange range) {
    for (std::size_t chunk = range.begin; chunk < range.end; ++chunk) {
      kernel(KernelContext<Lanes>(*view, chunk * vvl, vvl));
    }
  };
}

template <class Kernel>
ChunkFn bind_kernel(std::shared_ptr<const LaunchView> view, std::size_t vvl, Kernel kernel) {
  switch (vvl) {
    case 1:
      return bind_lanes<1>(std::move(view), vvl, std::move(kernel));
    case 2:
      return bind_lanes<2>(std::move(view), vvl, std::move(kernel));
    case 4:
      return bind_lanes<4>(std::move(view), vvl, std::move(kernel));
    case 8:
      return bind_lanes<8>(std::move(view), vvl, std::move(kernel));
    case 16:
      return bind_lanes<16>(std::move(view), vvl, std::move(kernel));
    case 32:
      return bind_lanes<32>(std::move(view), vvl, std::move(kernel));
    default:
      return bind_lanes<0>(std::move(view), vvl, std::move(kernel));
  }
}

}  // namespace detail

/// Issues `kernel` once per chunk of `plan`. On the reference backend the
/// launch completes before returning; elsewhere it runs on the device's worker
/// pool. Either way the launch stays in flight until sync_target, which also
/// reports any error raised by the kernel.
template <class Kernel>
LaunchHandle launch(TargetDevice& device, const LaunchPlan& plan, const LaunchArgs& args,
                    Kernel kernel) {
  auto view = std::make_shared<const detail::LaunchView>(detail::prepare_launch(device, plan, args));
  auto run = detail::bind_kernel(view, plan.vvl, std::move(kernel));
  return detail::submit_launch(device, plan, std::move(view), std::move(run));
}

/// Waits for every launch issued on `device`, ends the in-flight window and
/// rethrows the first error raised by those launches.
void sync_target(TargetDevice& device);

}  // namespace ldp
