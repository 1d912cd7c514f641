#pragma once

#include <cstddef>
#include <cstdint>
#include <exception>
#include <memory>
#include <mutex>
#include <optional>
#include <unordered_map>

#include "arena.hpp"
#include "ldp/constants.hpp"
#include "ldp/target_memory.hpp"
#include "worker_pool.hpp"

namespace ldp::detail {

struct AlignedFree {
  void operator()(double* p) const noexcept { std::free(p); }
};

// One target allocation: either an arena block (emulated) or a heap block.
struct Block {
  double* data = nullptr;
  std::size_t ndoubles = 0;
  std::optional<std::size_t> arena_offset;
  std::unique_ptr<double, AlignedFree> heap;
};

class DeviceState {
 public:
  explicit DeviceState(const DeviceOptions& options);
  ~DeviceState();

  DeviceOptions options;
  std::uint64_t id;
  ConstantBlock constants;
  TransferStats stats;

  // Issued and not yet passed through sync_target.
  bool in_flight = false;

  [[nodiscard]] std::size_t bytes_in_use() const noexcept;

  // Zero-filled block; throws AllocationError when the arena is exhausted.
  std::uint64_t allocate(std::size_t ndoubles);
  void release(std::uint64_t block) noexcept;
  [[nodiscard]] const Block* find(std::uint64_t block) const noexcept;

  // Pool sized to `workers`, rebuilt when the size changes.
  WorkerPool& pool(std::size_t workers);
  // Blocks until any issued work has finished executing (not a sync).
  void drain() noexcept;

  void record_error(std::exception_ptr error) noexcept;
  std::exception_ptr take_error() noexcept;

  void require_idle(const char* what) const;

 private:
  std::optional<Arena> arena_;
  std::unordered_map<std::uint64_t, Block> blocks_;
  std::uint64_t next_block_ = 1;
  std::size_t heap_bytes_ = 0;
  std::unique_ptr<WorkerPool> pool_;
  std::mutex error_mu_;
  std::exception_ptr error_;
};

struct BufferAccess {
  static DeviceState* state(const TargetBuffer& buffer) noexcept { return buffer.device_.get(); }
};

}  // namespace ldp::detail
