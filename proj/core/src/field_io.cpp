#include "ldp/field_io.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>

#include "ldp/error.hpp"

namespace ldp {
namespace {

static_assert(std::endian::native == std::endian::little || std::endian::native == std::endian::big);

template <class T>
std::array<char, sizeof(T)> to_le_bytes(T value) {
  std::array<char, sizeof(T)> bytes;
  std::memcpy(bytes.data(), &value, sizeof(T));
  if constexpr (std::endian::native == std::endian::big) {
    std::reverse(bytes.begin(), bytes.end());
  }
  return bytes;
}

template <class T>
T from_le_bytes(std::array<char, sizeof(T)> bytes) {
  if constexpr (std::endian::native == std::endian::big) {
    std::reverse(bytes.begin(), bytes.end());
  }
  T value;
  std::memcpy(&value, bytes.data(), sizeof(T));
  return value;
}

template <class T>
void put(std::ostream& os, T value) {
  auto bytes = to_le_bytes(value);
  os.write(bytes.data(), bytes.size());
}

template <class T>
T get(std::istream& is) {
  std::array<char, sizeof(T)> bytes;
  if (!is.read(bytes.data(), bytes.size())) {
    throw ShapeError("truncated field stream");
  }
  return from_le_bytes<T>(bytes);
}

}  // namespace

void write_field(std::ostream& os, const Field& field) {
  const auto& shape = field.descriptor().shape;
  put<std::uint64_t>(os, field.ncomp());
  put<std::uint64_t>(os, shape.nx);
  put<std::uint64_t>(os, shape.ny);
  put<std::uint64_t>(os, shape.nz);
  for (std::size_t c = 0; c < field.ncomp(); ++c) {
    for (double v : field.component(c)) {
      put<double>(os, v);
    }
  }
  if (!os) {
    throw Error("failed writing field stream");
  }
}

Field read_field(std::istream& is, std::size_t pad_multiple) {
  const auto ncomp = get<std::uint64_t>(is);
  LatticeShape shape;
  shape.nx = get<std::uint64_t>(is);
  shape.ny = get<std::uint64_t>(is);
  shape.nz = get<std::uint64_t>(is);
  Field field(make_descriptor(shape, ncomp, pad_multiple));
  for (std::size_t c = 0; c < field.ncomp(); ++c) {
    for (std::size_t s = 0; s < field.nsites(); ++s) {
      field(c, s) = get<double>(is);
    }
  }
  return field;
}

void dump_field(const std::filesystem::path& path, const Field& field) {
  std::ofstream os(path, std::ios::binary);
  if (!os) {
    throw Error("cannot open " + path.string() + " for writing");
  }
  write_field(os, field);
}

Field load_field(const std::filesystem::path& path, std::size_t pad_multiple) {
  std::ifstream is(path, std::ios::binary);
  if (!is) {
    throw Error("cannot open " + path.string());
  }
  return read_field(is, pad_multiple);
}

}  // namespace ldp
