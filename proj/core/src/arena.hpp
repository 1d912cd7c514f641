#pragma once

#include <cstddef>
#include <cstdlib>
#include <map>
#include <memory>
#include <optional>

namespace ldp::detail {

// First-fit allocator over one reserved pool of doubles. Blocks are rounded
// to 64-byte multiples; adjacent free blocks are coalesced on release.
class Arena {
 public:
  static constexpr std::size_t kGranule = 8;

  explicit Arena(std::size_t capacity_bytes);

  [[nodiscard]] std::optional<std::size_t> allocate(std::size_t ndoubles);
  void release(std::size_t offset);

  [[nodiscard]] double* base() const noexcept { return pool_.get(); }
  [[nodiscard]] std::size_t capacity_bytes() const noexcept { return capacity_ * sizeof(double); }
  [[nodiscard]] std::size_t used_bytes() const noexcept { return used_ * sizeof(double); }
  [[nodiscard]] bool owns(const double* p) const noexcept {
    return p >= pool_.get() && p < pool_.get() + capacity_;
  }

 private:
  struct FreeDeleter {
    void operator()(double* p) const noexcept { std::free(p); }
  };

  std::unique_ptr<double, FreeDeleter> pool_;
  std::size_t capacity_ = 0;
  std::size_t used_ = 0;
  std::map<std::size_t, std::size_t> free_;  // offset -> size
  std::map<std::size_t, std::size_t> live_;  // offset -> size
};

}  // namespace ldp::detail
