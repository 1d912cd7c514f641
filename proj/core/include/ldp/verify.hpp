#pragma once

// Self-checks run by the bench tool's --verify mode.

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "ldp/benchmark.hpp"

namespace ldp {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct ConfigMatrix {
  std::vector<Backend> backends{Backend::reference, Backend::threaded, Backend::emulated};
  std::vector<std::size_t> vvls{1, 2, 4, 8};
  std::vector<std::size_t> workers{1, 2, 4};

  [[nodiscard]] std::size_t size() const noexcept {
    return backends.size() * vvls.size() * workers.size();
  }
};

/// Runs `kernel` on a fixed-seed random state under every configuration in
/// `matrix` and requires real-site output bitwise equal to the first one.
[[nodiscard]] CheckResult verify_equivalence(KernelId kernel, const LatticeShape& shape,
                                             const ConfigMatrix& matrix, std::uint64_t seed,
                                             std::size_t steps = 1);

/// Per-site rho, rho*u and phi before and after one collision step. The error
/// of each quantity is measured relative to the sum of the magnitudes of the
/// populations it is summed from.
[[nodiscard]] CheckResult verify_conservation(const LatticeShape& shape, std::uint64_t seed,
                                              double rel_tol = 1e-13);

/// Scale kernel output against a per-element scalar loop, bitwise.
[[nodiscard]] CheckResult verify_scale_oracle(const LatticeShape& shape, std::uint64_t seed,
                                              double a = 0.37);

/// Largest conservation error of one collision step from `before` to `after`.
struct ConservationError {
  double rho = 0.0;
  double momentum = 0.0;
  double phi = 0.0;
};
[[nodiscard]] ConservationError conservation_error(const BinaryFluidState& before,
                                                   const BinaryFluidState& after,
                                                   const lb::D3Q19Model& model);

}  // namespace ldp
