#pragma once

/**
 * @file lattice.hpp
 * @brief Lattice geometry, field descriptors and structure-of-arrays storage.
 *
 * Every lattice field holds `ncomp` double-precision values per site. Storage
 * is component-major: all sites of component 0, then all sites of component 1,
 * and so on, so consecutive site indices are consecutive in memory and a run
 * of VVL sites can be loaded as a vector.
 *
 * The site count is padded up to a multiple of the framework's maximum VVL so
 * that lane loops never need a tail guard. Padding is zero at creation, may be
 * written by kernels, and is never reported by the read operations here.
 *
 * ```cpp
 * auto desc = ldp::make_descriptor(ldp::LatticeShape{8, 8, 8}, 3);
 * auto field = ldp::field_create(desc);
 * ldp::field_fill(field, [](std::size_t c, std::size_t s) { return c + 0.5 * s; });
 * ```
 */

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace ldp {

/// Padding multiple applied when no explicit one is requested. Any VVL that
/// divides it can be launched on a default-padded field.
inline constexpr std::size_t kDefaultPadMultiple = 8;

struct LatticeShape {
  std::size_t nx = 1;
  std::size_t ny = 1;
  std::size_t nz = 1;

  [[nodiscard]] constexpr std::size_t nsites() const noexcept { return nx * ny * nz; }

  /// Linear site index with z fastest.
  [[nodiscard]] constexpr std::size_t site(std::size_t ix, std::size_t iy,
                                           std::size_t iz) const noexcept {
    return (ix * ny + iy) * nz + iz;
  }

  friend constexpr bool operator==(const LatticeShape&, const LatticeShape&) = default;
};

/// Throws ConfigError unless every extent is at least one.
void validate(const LatticeShape& shape);

/// "NXxNYxNZ", e.g. "16x16x16".
[[nodiscard]] std::string to_string(const LatticeShape& shape);

/// Parses "NXxNYxNZ"; throws ConfigError on malformed or non-positive extents.
[[nodiscard]] LatticeShape parse_shape(const std::string& text);

struct FieldDescriptor {
  LatticeShape shape;
  std::size_t ncomp = 1;
  std::size_t padded_sites = 0;

  [[nodiscard]] constexpr std::size_t nsites() const noexcept { return shape.nsites(); }
  [[nodiscard]] constexpr std::size_t size() const noexcept { return ncomp * padded_sites; }

  friend constexpr bool operator==(const FieldDescriptor&, const FieldDescriptor&) = default;
};

/// Smallest multiple of `vvl` that is >= `nsites`. Throws ConfigError when
/// vvl is zero or nsites is zero.
[[nodiscard]] std::size_t pad_sites(std::size_t nsites, std::size_t vvl);

/// Builds a descriptor padded to `pad_multiple`.
[[nodiscard]] FieldDescriptor make_descriptor(const LatticeShape& shape, std::size_t ncomp,
                                              std::size_t pad_multiple = kDefaultPadMultiple);

/// Linear position of (component, site) in SoA storage. Checked.
[[nodiscard]] std::size_t soa_index(std::size_t c, std::size_t s, std::size_t ncomp,
                                    std::size_t padded_sites);

/// Unchecked form used on hot paths.
[[nodiscard]] constexpr std::size_t soa_offset(std::size_t c, std::size_t s,
                                               std::size_t padded_sites) noexcept {
  return c * padded_sites + s;
}

/// Host-side lattice field.
class Field {
 public:
  explicit Field(const FieldDescriptor& desc);

  [[nodiscard]] const FieldDescriptor& descriptor() const noexcept { return desc_; }
  [[nodiscard]] std::size_t ncomp() const noexcept { return desc_.ncomp; }
  [[nodiscard]] std::size_t nsites() const noexcept { return desc_.nsites(); }
  [[nodiscard]] std::size_t padded_sites() const noexcept { return desc_.padded_sites; }

  /// Checked element access; sites in the padding are rejected.
  [[nodiscard]] double at(std::size_t c, std::size_t s) const;
  double& at(std::size_t c, std::size_t s);

  /// Unchecked element access over the whole padded range.
  [[nodiscard]] double operator()(std::size_t c, std::size_t s) const noexcept {
    return data_[soa_offset(c, s, desc_.padded_sites)];
  }
  double& operator()(std::size_t c, std::size_t s) noexcept {
    return data_[soa_offset(c, s, desc_.padded_sites)];
  }

  /// Full storage including padding, ncomp * padded_sites values.
  [[nodiscard]] std::span<const double> raw() const noexcept { return data_; }
  [[nodiscard]] std::span<double> raw() noexcept { return data_; }

  /// Real sites of one component.
  [[nodiscard]] std::span<const double> component(std::size_t c) const;

 private:
  FieldDescriptor desc_;
  std::vector<double> data_;
};

/// Zero-initialized field, padding included.
[[nodiscard]] Field field_create(const FieldDescriptor& desc);

/// Sets every real-site element to gen(component, site). Padding is left alone.
void field_fill(Field& field, const std::function<double(std::size_t, std::size_t)>& gen);

/// Largest |a - b| over real sites. Throws ShapeError on descriptor mismatch.
[[nodiscard]] double field_max_abs_diff(const Field& a, const Field& b);

/// True when every real-site element matches bit for bit.
[[nodiscard]] bool field_bitwise_equal(const Field& a, const Field& b);

/// Site-major (AoS) input of length ncomp * nsites into a SoA field.
[[nodiscard]] Field aos_to_soa(std::span<const double> aos, const LatticeShape& shape,
                               std::size_t ncomp,
                               std::size_t pad_multiple = kDefaultPadMultiple);

/// Real sites of `field` in site-major (AoS) order.
[[nodiscard]] std::vector<double> soa_to_aos(const Field& field);

}  // namespace ldp
