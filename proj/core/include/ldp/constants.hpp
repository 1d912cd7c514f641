#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace ldp {

/// Type-and-shape tag of a constant entry. Overwriting a key with a different
/// kind is a TypeError.
enum class ConstantKind { scalar_double, scalar_int, double_array_1d, double_array_2d, int_array_1d };

[[nodiscard]] std::string_view to_string(ConstantKind kind) noexcept;

/// One immutable-per-launch parameter mirrored onto the target.
class ConstantEntry {
 public:
  static ConstantEntry scalar(double v);
  static ConstantEntry scalar(std::int64_t v);
  static ConstantEntry array(std::span<const double> values, std::span<const std::size_t> dims);
  static ConstantEntry array(std::span<const std::int64_t> values,
                             std::span<const std::size_t> dims);

  [[nodiscard]] ConstantKind kind() const noexcept { return kind_; }

  /// Typed reads; each throws TypeError when the entry holds another kind.
  [[nodiscard]] double as_double() const;
  [[nodiscard]] std::int64_t as_int() const;
  [[nodiscard]] std::span<const double> doubles() const;
  [[nodiscard]] std::span<const std::int64_t> ints() const;

  /// Extents of array entries; empty for scalars.
  [[nodiscard]] std::span<const std::size_t> dims() const noexcept { return dims_; }

 private:
  ConstantEntry(ConstantKind kind, std::variant<double, std::int64_t, std::vector<double>,
                                                std::vector<std::int64_t>>
                                       value,
                std::vector<std::size_t> dims);

  ConstantKind kind_;
  std::variant<double, std::int64_t, std::vector<double>, std::vector<std::int64_t>> value_;
  std::vector<std::size_t> dims_;
};

/// Keyed store of constant entries. Entries are copied in; later changes to the
/// caller's source data have no effect on stored values.
class ConstantBlock {
 public:
  /// Inserts or replaces `key`. Replacing with a different kind throws TypeError.
  void set(const std::string& key, ConstantEntry entry);

  /// Throws ConfigError when the key is absent.
  [[nodiscard]] const ConstantEntry& get(std::string_view key) const;
  [[nodiscard]] const ConstantEntry* find(std::string_view key) const noexcept;

  [[nodiscard]] bool contains(std::string_view key) const noexcept { return find(key) != nullptr; }
  [[nodiscard]] std::size_t size() const noexcept { return entries_.size(); }

 private:
  std::map<std::string, ConstantEntry, std::less<>> entries_;
};

}  // namespace ldp
