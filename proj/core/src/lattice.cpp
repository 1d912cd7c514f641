#include "ldp/lattice.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstring>
#include <sstream>

#include "ldp/error.hpp"

namespace ldp {

void validate(const LatticeShape& shape) {
  if (shape.nx == 0 || shape.ny == 0 || shape.nz == 0) {
    throw ConfigError("lattice extents must be >= 1, got " + to_string(shape));
  }
}

std::string to_string(const LatticeShape& shape) {
  std::ostringstream os;
  os << shape.nx << 'x' << shape.ny << 'x' << shape.nz;
  return os.str();
}

LatticeShape parse_shape(const std::string& text) {
  std::size_t extents[3] = {0, 0, 0};
  const char* p = text.data();
  const char* end = text.data() + text.size();
  for (int d = 0; d < 3; ++d) {
    auto [next, ec] = std::from_chars(p, end, extents[d]);
    if (ec != std::errc{} || next == p) {
      throw ConfigError("invalid shape '" + text + "', expected NXxNYxNZ");
    }
    p = next;
    if (d < 2) {
      if (p == end || (*p != 'x' && *p != 'X')) {
        throw ConfigError("invalid shape '" + text + "', expected NXxNYxNZ");
      }
      ++p;
    }
  }
  if (p != end) {
    throw ConfigError("invalid shape '" + text + "', expected NXxNYxNZ");
  }
  LatticeShape shape{extents[0], extents[1], extents[2]};
  validate(shape);
  return shape;
}

std::size_t pad_sites(std::size_t nsites, std::size_t vvl) {
  if (vvl == 0) {
    throw ConfigError("VVL must be >= 1");
  }
  if (nsites == 0) {
    throw ConfigError("site count must be >= 1");
  }
  return (nsites + vvl - 1) / vvl * vvl;
}

FieldDescriptor make_descriptor(const LatticeShape& shape, std::size_t ncomp,
                                std::size_t pad_multiple) {
  validate(shape);
  if (ncomp == 0) {
    throw ConfigError("a field needs at least one component");
  }
  return FieldDescriptor{shape, ncomp, pad_sites(shape.nsites(), pad_multiple)};
}

std::size_t soa_index(std::size_t c, std::size_t s, std::size_t ncomp,
                      std::size_t padded_sites) {
  if (c >= ncomp) {
    throw BoundsError("component " + std::to_string(c) + " out of range [0, " +
                      std::to_string(ncomp) + ")");
  }
  if (s >= padded_sites) {
    throw BoundsError("site " + std::to_string(s) + " out of range [0, " +
                      std::to_string(padded_sites) + ")");
  }
  return soa_offset(c, s, padded_sites);
}

Field::Field(const FieldDescriptor& desc) : desc_(desc), data_(desc.size(), 0.0) {
  if (desc.ncomp == 0 || desc.padded_sites < desc.nsites()) {
    throw ShapeError("malformed field descriptor");
  }
}

double Field::at(std::size_t c, std::size_t s) const {
  if (s >= nsites()) {
    throw BoundsError("site " + std::to_string(s) + " out of range [0, " +
                      std::to_string(nsites()) + ")");
  }
  return data_[soa_index(c, s, desc_.ncomp, desc_.padded_sites)];
}

double& Field::at(std::size_t c, std::size_t s) {
  if (s >= nsites()) {
    throw BoundsError("site " + std::to_string(s) + " out of range [0, " +
                      std::to_string(nsites()) + ")");
  }
  return data_[soa_index(c, s, desc_.ncomp, desc_.padded_sites)];
}

std::span<const double> Field::component(std::size_t c) const {
  if (c >= desc_.ncomp) {
    throw BoundsError("component " + std::to_string(c) + " out of range");
  }
  return std::span<const double>(data_).subspan(c * desc_.padded_sites, nsites());
}

Field field_create(const FieldDescriptor& desc) { return Field(desc); }

void field_fill(Field& field, const std::function<double(std::size_t, std::size_t)>& gen) {
  for (std::size_t c = 0; c < field.ncomp(); ++c) {
    for (std::size_t s = 0; s < field.nsites(); ++s) {
      field(c, s) = gen(c, s);
    }
  }
}

namespace {

void require_same(const Field& a, const Field& b) {
  if (a.descriptor() != b.descriptor()) {
    throw ShapeError("field descriptors differ");
  }
}

}  // namespace

double field_max_abs_diff(const Field& a, const Field& b) {
  require_same(a, b);
  double worst = 0.0;
  for (std::size_t c = 0; c < a.ncomp(); ++c) {
    auto x = a.component(c);
    auto y = b.component(c);
    for (std::size_t s = 0; s < x.size(); ++s) {
      worst = std::max(worst, std::abs(x[s] - y[s]));
    }
  }
  return worst;
}

bool field_bitwise_equal(const Field& a, const Field& b) {
  require_same(a, b);
  for (std::size_t c = 0; c < a.ncomp(); ++c) {
    auto x = a.component(c);
    auto y = b.component(c);
    if (std::memcmp(x.data(), y.data(), x.size_bytes()) != 0) {
      return false;
    }
  }
  return true;
}

Field aos_to_soa(std::span<const double> aos, const LatticeShape& shape, std::size_t ncomp,
                 std::size_t pad_multiple) {
  Field field(make_descriptor(shape, ncomp, pad_multiple));
  if (aos.size() != ncomp * field.nsites()) {
    throw ShapeError("AoS input has " + std::to_string(aos.size()) + " values, expected " +
                     std::to_string(ncomp * field.nsites()));
  }
  for (std::size_t s = 0; s < field.nsites(); ++s) {
    for (std::size_t c = 0; c < ncomp; ++c) {
      field(c, s) = aos[s * ncomp + c];
    }
  }
  return field;
}

std::vector<double> soa_to_aos(const Field& field) {
  std::vector<double> aos(field.ncomp() * field.nsites());
  for (std::size_t s = 0; s < field.nsites(); ++s) {
    for (std::size_t c = 0; c < field.ncomp(); ++c) {
      aos[s * field.ncomp() + c] = field(c, s);
    }
  }
  return aos;
}

}  // namespace ldp
