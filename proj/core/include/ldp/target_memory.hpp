#pragma once

/**
 * @file target_memory.hpp
 * @brief Host/target dual-memory discipline.
 *
 * Lattice data lives twice: a host Field owned by the caller and a
 * TargetBuffer allocated in a device's memory space. Kernels see only target
 * buffers and the device constant store; data moves between the two spaces
 * through explicit full or masked copies.
 *
 * Three backends share these semantics:
 *
 * - `reference`: target memory on the host heap, launches run synchronously on
 *   the calling thread.
 * - `threaded`: target memory on the host heap, launches run on a worker pool.
 * - `emulated`: target memory is a separately reserved arena with a hard
 *   capacity, standing in for a discrete accelerator. Launches run on a worker
 *   pool with chunks grouped into blocks of `tpb`.
 *
 * A device is driven from one host thread. While a launch is in flight (issued
 * and not yet synchronized with sync_target) copies, constant updates and
 * frees on that device are rejected.
 */

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ldp/constants.hpp"
#include "ldp/lattice.hpp"

namespace ldp {

enum class Backend { reference, threaded, emulated };

[[nodiscard]] std::string_view to_string(Backend backend) noexcept;

/// Accepts "reference", "threaded", "emulated" (also "emulated-discrete").
[[nodiscard]] Backend parse_backend(std::string_view name);

/// Available hardware parallelism, at least 1.
[[nodiscard]] std::size_t default_workers() noexcept;

struct DeviceOptions {
  Backend backend = Backend::reference;
  /// Default worker count for launch plans built against this device.
  std::size_t workers = default_workers();
  /// Capacity of the emulated target arena. Ignored by host-resident backends.
  std::size_t arena_bytes = std::size_t{1} << 30;
  /// Debug mode: run chunks one at a time and reject writes outside the chunk.
  bool check_writes = false;
};

/// Instrumentation counters, cumulative since construction or reset_stats().
struct TransferStats {
  std::uint64_t full_copies_to_target = 0;
  std::uint64_t full_copies_from_target = 0;
  std::uint64_t masked_copies_to_target = 0;
  std::uint64_t masked_copies_from_target = 0;
  std::uint64_t elements_packed = 0;
  std::uint64_t elements_unpacked = 0;
  /// Size of the scratch buffer of the most recent masked copy, in doubles.
  std::uint64_t last_packed_elements = 0;
  std::uint64_t bytes_to_target = 0;
  std::uint64_t bytes_from_target = 0;
  std::uint64_t launches = 0;
};

namespace detail {
class DeviceState;
struct BufferAccess;
}  // namespace detail

class TargetBuffer;

class TargetDevice {
 public:
  explicit TargetDevice(DeviceOptions options = {});
  ~TargetDevice();

  TargetDevice(const TargetDevice&) = delete;
  TargetDevice& operator=(const TargetDevice&) = delete;

  [[nodiscard]] Backend backend() const noexcept;
  [[nodiscard]] std::size_t workers() const noexcept;
  [[nodiscard]] bool check_writes() const noexcept;
  [[nodiscard]] std::uint64_t id() const noexcept;

  /// Bytes currently held by live target allocations.
  [[nodiscard]] std::size_t bytes_in_use() const noexcept;
  /// Arena capacity in bytes; 0 for host-resident backends (unbounded).
  [[nodiscard]] std::size_t capacity_bytes() const noexcept;

  [[nodiscard]] bool launch_in_flight() const noexcept;

  [[nodiscard]] const ConstantBlock& constants() const noexcept;
  [[nodiscard]] const TransferStats& stats() const noexcept;
  void reset_stats() noexcept;

  /// Internal state shared with buffers and the execution layer.
  [[nodiscard]] detail::DeviceState& state() const noexcept { return *state_; }

 private:
  friend TargetBuffer target_malloc(TargetDevice&, const FieldDescriptor&);
  std::shared_ptr<detail::DeviceState> state_;
};

/// Handle to a zero-initialized SoA allocation in a device's memory space.
/// Move-only; a live buffer is released when its handle is destroyed.
class TargetBuffer {
 public:
  TargetBuffer() = default;
  ~TargetBuffer();
  TargetBuffer(TargetBuffer&& other) noexcept;
  TargetBuffer& operator=(TargetBuffer&& other) noexcept;
  TargetBuffer(const TargetBuffer&) = delete;
  TargetBuffer& operator=(const TargetBuffer&) = delete;

  [[nodiscard]] const FieldDescriptor& descriptor() const noexcept { return desc_; }
  [[nodiscard]] std::uint64_t device_id() const noexcept;
  /// True between target_malloc and target_free.
  [[nodiscard]] bool valid() const noexcept;

  /// Target storage; throws LifecycleError when the buffer is not live.
  [[nodiscard]] double* data() const;

 private:
  friend TargetBuffer target_malloc(TargetDevice&, const FieldDescriptor&);
  friend void target_free(TargetBuffer&);
  friend struct detail::BufferAccess;

  std::shared_ptr<detail::DeviceState> device_;
  std::uint64_t block_ = 0;
  FieldDescriptor desc_;
};

/// Per-site inclusion flags for masked transfers.
class SiteMask {
 public:
  explicit SiteMask(std::size_t nsites, bool value = false);
  explicit SiteMask(std::span<const bool> flags);
  explicit SiteMask(const std::vector<bool>& flags);

  [[nodiscard]] std::size_t nsites() const noexcept { return flags_.size(); }
  [[nodiscard]] std::size_t included_count() const noexcept { return included_; }
  [[nodiscard]] bool operator[](std::size_t s) const noexcept { return flags_[s] != 0; }
  void set(std::size_t s, bool value);

  /// Included site indices in ascending order.
  [[nodiscard]] std::vector<std::size_t> included_sites() const;

 private:
  std::vector<std::uint8_t> flags_;
  std::size_t included_ = 0;
};

[[nodiscard]] TargetBuffer target_malloc(TargetDevice& device, const FieldDescriptor& desc);
void target_free(TargetBuffer& buffer);

/// Full copies, padding included.
void copy_to_target(TargetBuffer& buffer, const Field& field);
void copy_from_target(Field& field, const TargetBuffer& buffer);

/// Copies only sites flagged in `mask`, staged through a packed scratch buffer
/// of included_count * ncomp doubles. Other sites and padding are untouched.
void copy_to_target_masked(TargetBuffer& buffer, const Field& field, const SiteMask& mask);
void copy_from_target_masked(Field& field, const TargetBuffer& buffer, const SiteMask& mask);

void constant_set_double(TargetDevice& device, const std::string& key, double value);
void constant_set_int(TargetDevice& device, const std::string& key, std::int64_t value);
void constant_set_double_array(TargetDevice& device, const std::string& key,
                               std::span<const double> values,
                               std::span<const std::size_t> dims);
void constant_set_int_array(TargetDevice& device, const std::string& key,
                            std::span<const std::int64_t> values,
                            std::span<const std::size_t> dims);

}  // namespace ldp
