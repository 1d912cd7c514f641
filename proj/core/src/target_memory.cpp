#include "ldp/target_memory.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <cstring>
#include <new>
#include <thread>

#include "device_state.hpp"
#include "ldp/error.hpp"

namespace ldp {

std::string_view to_string(Backend backend) noexcept {
  switch (backend) {
    case Backend::reference:
      return "reference";
    case Backend::threaded:
      return "threaded";
    case Backend::emulated:
      return "emulated";
  }
  return "unknown";
}

Backend parse_backend(std::string_view name) {
  if (name == "reference") return Backend::reference;
  if (name == "threaded") return Backend::threaded;
  if (name == "emulated" || name == "emulated-discrete") return Backend::emulated;
  throw ConfigError("unknown backend '" + std::string(name) +
                    "' (expected reference, threaded or emulated)");
}

std::size_t default_workers() noexcept {
  return std::max(1u, std::thread::hardware_concurrency());
}

namespace detail {
namespace {

std::atomic<std::uint64_t> next_device_id{1};

std::unique_ptr<double, AlignedFree> heap_block(std::size_t ndoubles) {
  const std::size_t bytes = std::max<std::size_t>(64, (ndoubles * sizeof(double) + 63) / 64 * 64);
  void* p = std::aligned_alloc(64, bytes);
  if (p == nullptr) {
    throw AllocationError("host allocation of " + std::to_string(bytes) + " bytes failed");
  }
  return std::unique_ptr<double, AlignedFree>(static_cast<double*>(p));
}

}  // namespace

DeviceState::DeviceState(const DeviceOptions& opts)
    : options(opts), id(next_device_id.fetch_add(1)) {
  if (options.workers == 0) {
    throw ConfigError("worker count must be >= 1");
  }
  if (options.backend == Backend::emulated) {
    arena_.emplace(options.arena_bytes);
  }
}

DeviceState::~DeviceState() { drain(); }

std::size_t DeviceState::bytes_in_use() const noexcept {
  return arena_ ? arena_->used_bytes() : heap_bytes_;
}

std::uint64_t DeviceState::allocate(std::size_t ndoubles) {
  Block block;
  block.ndoubles = ndoubles;
  if (arena_) {
    auto offset = arena_->allocate(ndoubles);
    if (!offset) {
      throw AllocationError("target arena exhausted: requested " +
                            std::to_string(ndoubles * sizeof(double)) + " bytes, " +
                            std::to_string(arena_->capacity_bytes() - arena_->used_bytes()) +
                            " of " + std::to_string(arena_->capacity_bytes()) + " free");
    }
    block.arena_offset = *offset;
    block.data = arena_->base() + *offset;
  } else {
    block.heap = heap_block(ndoubles);
    block.data = block.heap.get();
    heap_bytes_ += ndoubles * sizeof(double);
  }
  std::fill_n(block.data, ndoubles, 0.0);
  const std::uint64_t handle = next_block_++;
  blocks_.emplace(handle, std::move(block));
  return handle;
}

void DeviceState::release(std::uint64_t handle) noexcept {
  auto it = blocks_.find(handle);
  if (it == blocks_.end()) {
    return;
  }
  if (it->second.arena_offset) {
    arena_->release(*it->second.arena_offset);
  } else {
    heap_bytes_ -= it->second.ndoubles * sizeof(double);
  }
  blocks_.erase(it);
}

const Block* DeviceState::find(std::uint64_t handle) const noexcept {
  auto it = blocks_.find(handle);
  return it == blocks_.end() ? nullptr : &it->second;
}

WorkerPool& DeviceState::pool(std::size_t workers) {
  if (!pool_ || pool_->size() != workers) {
    pool_.reset();
    pool_ = std::make_unique<WorkerPool>(workers);
  }
  return *pool_;
}

void DeviceState::drain() noexcept {
  if (pool_) {
    pool_->wait();
  }
}

void DeviceState::record_error(std::exception_ptr error) noexcept {
  std::lock_guard lock(error_mu_);
  if (!error_) {
    error_ = std::move(error);
  }
}

std::exception_ptr DeviceState::take_error() noexcept {
  std::lock_guard lock(error_mu_);
  return std::exchange(error_, nullptr);
}

void DeviceState::require_idle(const char* what) const {
  if (in_flight) {
    throw ConcurrencyError(std::string(what) +
                           " rejected: a launch is in flight on this device (call sync_target)");
  }
}

}  // namespace detail

// -- TargetDevice -------------------------------------------------------------

TargetDevice::TargetDevice(DeviceOptions options)
    : state_(std::make_shared<detail::DeviceState>(options)) {}

TargetDevice::~TargetDevice() {
  state_->drain();
  state_->in_flight = false;
}

Backend TargetDevice::backend() const noexcept { return state_->options.backend; }
std::size_t TargetDevice::workers() const noexcept { return state_->options.workers; }
bool TargetDevice::check_writes() const noexcept { return state_->options.check_writes; }
std::uint64_t TargetDevice::id() const noexcept { return state_->id; }
std::size_t TargetDevice::bytes_in_use() const noexcept { return state_->bytes_in_use(); }

std::size_t TargetDevice::capacity_bytes() const noexcept {
  return state_->options.backend == Backend::emulated
             ? state_->options.arena_bytes / (sizeof(double) * detail::Arena::kGranule) *
                   (sizeof(double) * detail::Arena::kGranule)
             : 0;
}

bool TargetDevice::launch_in_flight() const noexcept { return state_->in_flight; }
const ConstantBlock& TargetDevice::constants() const noexcept { return state_->constants; }
const TransferStats& TargetDevice::stats() const noexcept { return state_->stats; }
void TargetDevice::reset_stats() noexcept { state_->stats = {}; }

// -- TargetBuffer -------------------------------------------------------------

TargetBuffer::~TargetBuffer() {
  if (device_ && device_->find(block_) != nullptr) {
    device_->drain();
    device_->release(block_);
  }
}

TargetBuffer::TargetBuffer(TargetBuffer&& other) noexcept
    : device_(std::move(other.device_)),
      block_(std::exchange(other.block_, 0)),
      desc_(other.desc_) {}

TargetBuffer& TargetBuffer::operator=(TargetBuffer&& other) noexcept {
  if (this != &other) {
    TargetBuffer doomed(std::move(*this));
    device_ = std::move(other.device_);
    block_ = std::exchange(other.block_, 0);
    desc_ = other.desc_;
  }
  return *this;
}

std::uint64_t TargetBuffer::device_id() const noexcept { return device_ ? device_->id : 0; }

bool TargetBuffer::valid() const noexcept {
  return device_ && device_->find(block_) != nullptr;
}

double* TargetBuffer::data() const {
  if (!device_) {
    throw LifecycleError("target buffer was never allocated");
  }
  const auto* block = device_->find(block_);
  if (block == nullptr) {
    throw LifecycleError("target buffer used after target_free");
  }
  return block->data;
}

TargetBuffer target_malloc(TargetDevice& device, const FieldDescriptor& desc) {
  if (desc.ncomp == 0 || desc.padded_sites < desc.nsites() || desc.nsites() == 0) {
    throw ShapeError("malformed field descriptor");
  }
  TargetBuffer buffer;
  buffer.block_ = device.state_->allocate(desc.size());
  buffer.device_ = device.state_;
  buffer.desc_ = desc;
  return buffer;
}

void target_free(TargetBuffer& buffer) {
  if (!buffer.device_) {
    throw LifecycleError("target_free on a buffer that was never allocated");
  }
  if (buffer.device_->find(buffer.block_) == nullptr) {
    throw LifecycleError("target_free on an already freed buffer");
  }
  if (buffer.device_->in_flight) {
    throw LifecycleError("target_free while a launch is in flight on the owning device");
  }
  buffer.device_->release(buffer.block_);
}

// -- SiteMask -----------------------------------------------------------------

SiteMask::SiteMask(std::size_t nsites, bool value)
    : flags_(nsites, value ? 1 : 0), included_(value ? nsites : 0) {}

SiteMask::SiteMask(std::span<const bool> flags) : flags_(flags.size()) {
  for (std::size_t s = 0; s < flags.size(); ++s) {
    flags_[s] = flags[s] ? 1 : 0;
    included_ += flags_[s];
  }
}

SiteMask::SiteMask(const std::vector<bool>& flags) : flags_(flags.size()) {
  for (std::size_t s = 0; s < flags.size(); ++s) {
    flags_[s] = flags[s] ? 1 : 0;
    included_ += flags_[s];
  }
}

void SiteMask::set(std::size_t s, bool value) {
  if (s >= flags_.size()) {
    throw BoundsError("mask site " + std::to_string(s) + " out of range");
  }
  const std::uint8_t v = value ? 1 : 0;
  included_ = included_ - flags_[s] + v;
  flags_[s] = v;
}

std::vector<std::size_t> SiteMask::included_sites() const {
  std::vector<std::size_t> sites;
  sites.reserve(included_);
  for (std::size_t s = 0; s < flags_.size(); ++s) {
    if (flags_[s] != 0) {
      sites.push_back(s);
    }
  }
  return sites;
}

// -- Transfers ----------------------------------------------------------------

namespace {

// Live storage of `buffer` plus its device, checked for lifecycle and idleness.
struct Resolved {
  detail::DeviceState& device;
  double* data;
};

Resolved resolve(const TargetBuffer& buffer, const char* what) {
  double* data = buffer.data();
  auto& device = *detail::BufferAccess::state(buffer);
  device.require_idle(what);
  return {device, data};
}

void require_match(const FieldDescriptor& a, const FieldDescriptor& b) {
  if (a != b) {
    throw ShapeError("descriptor mismatch: field is " + std::to_string(a.ncomp) + " x " +
                     to_string(a.shape) + " (" + std::to_string(a.padded_sites) +
                     " padded sites), buffer is " + std::to_string(b.ncomp) + " x " +
                     to_string(b.shape) + " (" + std::to_string(b.padded_sites) + ")");
  }
}

void require_mask(const SiteMask& mask, const FieldDescriptor& desc) {
  if (mask.nsites() != desc.nsites()) {
    throw ShapeError("mask covers " + std::to_string(mask.nsites()) + " sites, field has " +
                     std::to_string(desc.nsites()));
  }
}

// Component-major pack: all included sites of component 0, then component 1, ...
void pack(const double* src, std::size_t padded, std::size_t ncomp,
          const std::vector<std::size_t>& sites, double* scratch) {
  std::size_t k = 0;
  for (std::size_t c = 0; c < ncomp; ++c) {
    const double* comp = src + c * padded;
    for (std::size_t s : sites) {
      scratch[k++] = comp[s];
    }
  }
}

void unpack(const double* scratch, std::size_t padded, std::size_t ncomp,
            const std::vector<std::size_t>& sites, double* dst) {
  std::size_t k = 0;
  for (std::size_t c = 0; c < ncomp; ++c) {
    double* comp = dst + c * padded;
    for (std::size_t s : sites) {
      comp[s] = scratch[k++];
    }
  }
}

// Target-side staging area for masked copies, released on scope exit.
class TargetScratch {
 public:
  TargetScratch(detail::DeviceState& device, std::size_t ndoubles)
      : device_(device), block_(device.allocate(ndoubles)) {}
  ~TargetScratch() { device_.release(block_); }
  TargetScratch(const TargetScratch&) = delete;
  TargetScratch& operator=(const TargetScratch&) = delete;

  [[nodiscard]] double* data() const noexcept { return device_.find(block_)->data; }

 private:
  detail::DeviceState& device_;
  std::uint64_t block_;
};

}  // namespace

void copy_to_target(TargetBuffer& buffer, const Field& field) {
  auto [device, data] = resolve(buffer, "copy_to_target");
  require_match(field.descriptor(), buffer.descriptor());
  auto src = field.raw();
  std::memcpy(data, src.data(), src.size_bytes());
  ++device.stats.full_copies_to_target;
  device.stats.bytes_to_target += src.size_bytes();
}

void copy_from_target(Field& field, const TargetBuffer& buffer) {
  auto [device, data] = resolve(buffer, "copy_from_target");
  require_match(field.descriptor(), buffer.descriptor());
  auto dst = field.raw();
  std::memcpy(dst.data(), data, dst.size_bytes());
  ++device.stats.full_copies_from_target;
  device.stats.bytes_from_target += dst.size_bytes();
}

void copy_to_target_masked(TargetBuffer& buffer, const Field& field, const SiteMask& mask) {
  auto [device, data] = resolve(buffer, "copy_to_target_masked");
  const auto& desc = buffer.descriptor();
  require_match(field.descriptor(), desc);
  require_mask(mask, desc);

  const auto sites = mask.included_sites();
  const std::size_t packed = sites.size() * desc.ncomp;

  std::vector<double> host_scratch(packed);
  pack(field.raw().data(), desc.padded_sites, desc.ncomp, sites, host_scratch.data());
  device.stats.elements_packed += packed;

  TargetScratch target_scratch(device, packed);
  std::memcpy(target_scratch.data(), host_scratch.data(), packed * sizeof(double));
  device.stats.bytes_to_target += packed * sizeof(double);

  unpack(target_scratch.data(), desc.padded_sites, desc.ncomp, sites, data);
  device.stats.elements_unpacked += packed;
  device.stats.last_packed_elements = packed;
  ++device.stats.masked_copies_to_target;
}

void copy_from_target_masked(Field& field, const TargetBuffer& buffer, const SiteMask& mask) {
  auto [device, data] = resolve(buffer, "copy_from_target_masked");
  const auto& desc = buffer.descriptor();
  require_match(field.descriptor(), desc);
  require_mask(mask, desc);

  const auto sites = mask.included_sites();
  const std::size_t packed = sites.size() * desc.ncomp;

  TargetScratch target_scratch(device, packed);
  pack(data, desc.padded_sites, desc.ncomp, sites, target_scratch.data());
  device.stats.elements_packed += packed;

  std::vector<double> host_scratch(packed);
  std::memcpy(host_scratch.data(), target_scratch.data(), packed * sizeof(double));
  device.stats.bytes_from_target += packed * sizeof(double);

  unpack(host_scratch.data(), desc.padded_sites, desc.ncomp, sites, field.raw().data());
  device.stats.elements_unpacked += packed;
  device.stats.last_packed_elements = packed;
  ++device.stats.masked_copies_from_target;
}

// -- Constants ----------------------------------------------------------------

void constant_set_double(TargetDevice& device, const std::string& key, double value) {
  device.state().require_idle("constant_set_double");
  device.state().constants.set(key, ConstantEntry::scalar(value));
}

void constant_set_int(TargetDevice& device, const std::string& key, std::int64_t value) {
  device.state().require_idle("constant_set_int");
  device.state().constants.set(key, ConstantEntry::scalar(value));
}

void constant_set_double_array(TargetDevice& device, const std::string& key,
                               std::span<const double> values,
                               std::span<const std::size_t> dims) {
  device.state().require_idle("constant_set_double_array");
  device.state().constants.set(key, ConstantEntry::array(values, dims));
}

void constant_set_int_array(TargetDevice& device, const std::string& key,
                            std::span<const std::int64_t> values,
                            std::span<const std::size_t> dims) {
  device.state().require_idle("constant_set_int_array");
  device.state().constants.set(key, ConstantEntry::array(values, dims));
}

}  // namespace ldp
