#include "arena.hpp"

#include <algorithm>
#include <iterator>
#include <new>

namespace ldp::detail {

Arena::Arena(std::size_t capacity_bytes)
    : capacity_(capacity_bytes / sizeof(double) / kGranule * kGranule) {
  if (capacity_ > 0) {
    // Pages are committed lazily by the OS; untouched capacity costs nothing.
    void* p = std::aligned_alloc(64, capacity_ * sizeof(double));
    if (p == nullptr) {
      throw std::bad_alloc();
    }
    pool_.reset(static_cast<double*>(p));
    free_.emplace(0, capacity_);
  }
}

std::optional<std::size_t> Arena::allocate(std::size_t ndoubles) {
  const std::size_t need = std::max<std::size_t>(kGranule, (ndoubles + kGranule - 1) / kGranule * kGranule);
  for (auto it = free_.begin(); it != free_.end(); ++it) {
    if (it->second < need) {
      continue;
    }
    const std::size_t offset = it->first;
    const std::size_t remaining = it->second - need;
    free_.erase(it);
    if (remaining > 0) {
      free_.emplace(offset + need, remaining);
    }
    live_.emplace(offset, need);
    used_ += need;
    return offset;
  }
  return std::nullopt;
}

void Arena::release(std::size_t offset) {
  auto live = live_.find(offset);
  if (live == live_.end()) {
    return;
  }
  std::size_t start = offset;
  std::size_t size = live->second;
  used_ -= size;
  live_.erase(live);

  auto next = free_.lower_bound(start);
  if (next != free_.end() && start + size == next->first) {
    size += next->second;
    next = free_.erase(next);
  }
  if (next != free_.begin()) {
    auto prev = std::prev(next);
    if (prev->first + prev->second == start) {
      start = prev->first;
      size += prev->second;
      free_.erase(prev);
    }
  }
  free_.emplace(start, size);
}

}  // namespace ldp::detail
