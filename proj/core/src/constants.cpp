#include "ldp/constants.hpp"

#include <functional>
#include <numeric>

#include "ldp/error.hpp"

namespace ldp {

std::string_view to_string(ConstantKind kind) noexcept {
  switch (kind) {
    case ConstantKind::scalar_double:
      return "double";
    case ConstantKind::scalar_int:
      return "int";
    case ConstantKind::double_array_1d:
      return "double[1d]";
    case ConstantKind::double_array_2d:
      return "double[2d]";
    case ConstantKind::int_array_1d:
      return "int[1d]";
  }
  return "unknown";
}

namespace {

std::size_t checked_extent(std::span<const std::size_t> dims, std::size_t nvalues,
                           bool allow_2d) {
  if (dims.empty() || dims.size() > (allow_2d ? 2u : 1u)) {
    throw ShapeError("constant array rank must be 1" + std::string(allow_2d ? " or 2" : "") +
                     ", got " + std::to_string(dims.size()));
  }
  const std::size_t total =
      std::accumulate(dims.begin(), dims.end(), std::size_t{1}, std::multiplies<>{});
  if (total != nvalues) {
    throw ShapeError("constant array dims describe " + std::to_string(total) +
                     " values but " + std::to_string(nvalues) + " were given");
  }
  return total;
}

}  // namespace

ConstantEntry::ConstantEntry(
    ConstantKind kind,
    std::variant<double, std::int64_t, std::vector<double>, std::vector<std::int64_t>> value,
    std::vector<std::size_t> dims)
    : kind_(kind), value_(std::move(value)), dims_(std::move(dims)) {}

ConstantEntry ConstantEntry::scalar(double v) { return {ConstantKind::scalar_double, v, {}}; }

ConstantEntry ConstantEntry::scalar(std::int64_t v) { return {ConstantKind::scalar_int, v, {}}; }

ConstantEntry ConstantEntry::array(std::span<const double> values,
                                   std::span<const std::size_t> dims) {
  checked_extent(dims, values.size(), true);
  return {dims.size() == 1 ? ConstantKind::double_array_1d : ConstantKind::double_array_2d,
          std::vector<double>(values.begin(), values.end()),
          std::vector<std::size_t>(dims.begin(), dims.end())};
}

ConstantEntry ConstantEntry::array(std::span<const std::int64_t> values,
                                   std::span<const std::size_t> dims) {
  checked_extent(dims, values.size(), false);
  return {ConstantKind::int_array_1d, std::vector<std::int64_t>(values.begin(), values.end()),
          std::vector<std::size_t>(dims.begin(), dims.end())};
}

double ConstantEntry::as_double() const {
  if (const auto* v = std::get_if<double>(&value_)) {
    return *v;
  }
  throw TypeError("constant holds " + std::string(to_string(kind_)) + ", not double");
}

std::int64_t ConstantEntry::as_int() const {
  if (const auto* v = std::get_if<std::int64_t>(&value_)) {
    return *v;
  }
  throw TypeError("constant holds " + std::string(to_string(kind_)) + ", not int");
}

std::span<const double> ConstantEntry::doubles() const {
  if (const auto* v = std::get_if<std::vector<double>>(&value_)) {
    return *v;
  }
  throw TypeError("constant holds " + std::string(to_string(kind_)) + ", not a double array");
}

std::span<const std::int64_t> ConstantEntry::ints() const {
  if (const auto* v = std::get_if<std::vector<std::int64_t>>(&value_)) {
    return *v;
  }
  throw TypeError("constant holds " + std::string(to_string(kind_)) + ", not an int array");
}

void ConstantBlock::set(const std::string& key, ConstantEntry entry) {
  auto it = entries_.find(key);
  if (it == entries_.end()) {
    entries_.emplace(key, std::move(entry));
    return;
  }
  if (it->second.kind() != entry.kind()) {
    throw TypeError("constant '" + key + "' is " + std::string(to_string(it->second.kind())) +
                    ", cannot overwrite with " + std::string(to_string(entry.kind())));
  }
  it->second = std::move(entry);
}

const ConstantEntry& ConstantBlock::get(std::string_view key) const {
  if (const auto* e = find(key)) {
    return *e;
  }
  throw ConfigError("no constant named '" + std::string(key) + "'");
}

const ConstantEntry* ConstantBlock::find(std::string_view key) const noexcept {
  auto it = entries_.find(key);
  return it == entries_.end() ? nullptr : &it->second;
}

}  // namespace ldp
