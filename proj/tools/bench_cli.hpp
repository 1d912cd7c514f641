#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ldp/benchmark.hpp"

namespace ldp::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerifyFailed = 1;
inline constexpr int kExitConfig = 2;

struct SweepConfig {
  KernelId kernel = KernelId::scale;
  LatticeShape shape{16, 16, 16};
  std::vector<std::size_t> vvls{1, 2, 4, 8};
  std::vector<std::size_t> workers{default_workers()};
  std::vector<Backend> backends{Backend::threaded};
  std::size_t tpb = kDefaultTpb;
  std::size_t iterations = 10;
  bool csv = false;
  std::optional<std::string> csv_path;
  bool verify = false;
  bool stats = false;
  std::uint64_t seed = 42;
  std::optional<std::string> dump_prefix;
};

/// Throws ConfigError when a list is empty, a count is zero, or a VVL does not
/// divide the padded extent.
void validate(const SweepConfig& config);

/// Parses argv (argv[0] is the program name). Returns nullopt after printing
/// help. Throws ConfigError on any malformed flag or value.
[[nodiscard]] std::optional<SweepConfig> parse_args(int argc, const char* const* argv,
                                                    std::ostream& out);

/// One row of the sweep CSV.
struct SweepRow {
  std::string kernel;
  std::string backend;
  std::size_t nx = 0;
  std::size_t ny = 0;
  std::size_t nz = 0;
  std::size_t vvl = 0;
  std::size_t workers = 0;
  std::size_t tpb = 0;
  std::size_t iters = 0;
  double elapsed_s = 0.0;
  double sites_per_s = 0.0;
};

inline constexpr std::string_view kCsvHeader =
    "kernel,backend,nx,ny,nz,vvl,workers,tpb,iters,elapsed_s,sites_per_s";

[[nodiscard]] SweepRow to_row(const BenchmarkResult& result);

/// Header plus one line per row, in input order. Timing columns carry nine
/// significant digits.
[[nodiscard]] std::string emit_csv(std::span<const SweepRow> rows);
[[nodiscard]] std::vector<SweepRow> parse_csv(std::string_view text);

/// One line per (kernel, backend[, workers]) group, e.g.
/// "binary-collision/threaded: best VVL=8, 1.43x over VVL=1". The worker count
/// is appended to the label when a (kernel, backend) pair was swept over more
/// than one. Ties go to the smaller VVL. Throws ConfigError when a group has no
/// VVL=1 row.
[[nodiscard]] std::vector<std::string> report_best(std::span<const SweepRow> rows);

/// Exactly |backends| * |workers| * |vvls| runs, backends outermost and VVL
/// innermost.
[[nodiscard]] std::vector<BenchmarkResult> run_sweep(const SweepConfig& config);

/// Exit codes: 0 success, 1 verification failure, 2 configuration error.
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace ldp::cli
