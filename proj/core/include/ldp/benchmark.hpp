#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>

#include "ldp/kernels.hpp"

namespace ldp {

enum class KernelId { scale, binary_collision };

/// "scale" or "binary-collision".
[[nodiscard]] std::string_view to_string(KernelId kernel) noexcept;
[[nodiscard]] KernelId parse_kernel(std::string_view name);

/// Bytes read plus bytes written per site and launch.
[[nodiscard]] std::size_t bytes_per_site(KernelId kernel) noexcept;

struct BenchmarkConfig {
  KernelId kernel = KernelId::scale;
  LatticeShape shape{16, 16, 16};
  std::size_t vvl = 1;
  std::size_t workers = 1;
  Backend backend = Backend::reference;
  std::size_t tpb = kDefaultTpb;
  std::size_t iterations = 10;
  std::uint64_t seed = 42;
  std::size_t pad_multiple = kDefaultPadMultiple;
};

struct BenchmarkResult {
  BenchmarkConfig config;
  double elapsed_s = 0.0;
  double sites_per_s = 0.0;
  double bytes_per_s = 0.0;
  TransferStats stats;
};

/// Times `iterations` launch+sync pairs after one untimed warm-up launch.
/// Host/target copies happen outside the timed region. Throws PlanError for
/// invalid configurations.
[[nodiscard]] BenchmarkResult benchmark_run(const BenchmarkConfig& config);

}  // namespace ldp
