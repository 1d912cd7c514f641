#pragma once

#include <filesystem>
#include <iosfwd>

#include "ldp/lattice.hpp"

namespace ldp {

// Binary field format, all little-endian:
//   u64 ncomp, u64 nx, u64 ny, u64 nz
//   ncomp * nsites doubles, component-major, padding excluded

void write_field(std::ostream& os, const Field& field);
[[nodiscard]] Field read_field(std::istream& is, std::size_t pad_multiple = kDefaultPadMultiple);

void dump_field(const std::filesystem::path& path, const Field& field);
[[nodiscard]] Field load_field(const std::filesystem::path& path,
                               std::size_t pad_multiple = kDefaultPadMultiple);

}  // namespace ldp
