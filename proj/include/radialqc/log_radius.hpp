#pragma once

#include <cmath>
#include <compare>
#include <limits>

#include "radialqc/errors.hpp"

namespace radialqc {

/// A radius in [0,1] stored as its base-2 logarithm.
///
/// Every quantity in the library lives in this coordinate: breakpoints of the
/// power-law maps shrink like 2^(-c n), so linear radii underflow long before
/// the constructions stop being interesting. The radius 0 is carried by a
/// dedicated sentinel (log2 = -infinity) and never by an ordinary value.
class LogRadius {
 public:
  constexpr LogRadius() = default;

  static LogRadius from_log2(double value) {
    if (std::isnan(value) || value > 0.0) {
      throw DomainError("log2 radius must be <= 0");
    }
    return LogRadius(value);
  }

  static LogRadius from_radius(double r) {
    if (!(r >= 0.0 && r <= 1.0)) {
      throw DomainError("radius must lie in [0, 1]");
    }
    return r == 0.0 ? origin() : LogRadius(std::log2(r));
  }

  /// The radius-0 sentinel.
  static constexpr LogRadius origin() {
    return LogRadius(-std::numeric_limits<double>::infinity());
  }

  /// Builds a value produced by arithmetic that is mathematically <= 0; a
  /// positive roundoff residue is clamped to 0.
  static LogRadius clamped(double value) {
    return LogRadius(value > 0.0 ? 0.0 : value);
  }

  constexpr double log2() const { return value_; }
  constexpr bool is_origin() const { return value_ == -std::numeric_limits<double>::infinity(); }
  /// Linear radius; underflows to 0 below the double exponent range.
  double radius() const { return std::exp2(value_); }

  friend constexpr auto operator<=>(LogRadius, LogRadius) = default;

 private:
  constexpr explicit LogRadius(double value) : value_(value) {}

  double value_ = 0.0;
};

}  // namespace radialqc
