#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <limits>
#include <optional>
#include <ostream>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace pdaed {

/// Arbitrary-precision natural number, used for thresholds and bounds that
/// may exceed the machine word.
using Natural = boost::multiprecision::cpp_int;

/// A natural number or infinity. Addition saturates: inf + n = inf.
class Distance {
 public:
  constexpr Distance() noexcept : value_(0) {}
  constexpr Distance(std::uint64_t value) noexcept : value_(value) {}  // NOLINT(google-explicit-constructor)

  static constexpr Distance infinity() noexcept {
    Distance d;
    d.value_.reset();
    return d;
  }

  constexpr bool is_infinite() const noexcept { return !value_.has_value(); }
  constexpr bool is_finite() const noexcept { return value_.has_value(); }

  /// Precondition: is_finite().
  constexpr std::uint64_t value() const { return *value_; }

  friend constexpr Distance operator+(Distance a, Distance b) noexcept {
    if (a.is_infinite() || b.is_infinite()) return infinity();
    const auto sum = *a.value_ + *b.value_;
    if (sum < *a.value_) return infinity();
    return Distance(sum);
  }

  friend constexpr bool operator==(const Distance& a, const Distance& b) noexcept = default;

  friend constexpr std::strong_ordering operator<=>(const Distance& a, const Distance& b) noexcept {
    if (a.is_infinite() || b.is_infinite()) {
      return a.is_infinite() <=> b.is_infinite();
    }
    return *a.value_ <=> *b.value_;
  }

  std::string to_string() const { return is_infinite() ? std::string("inf") : std::to_string(*value_); }

  friend std::ostream& operator<<(std::ostream& os, const Distance& d) { return os << d.to_string(); }

 private:
  std::optional<std::uint64_t> value_;
};

}  // namespace pdaed
