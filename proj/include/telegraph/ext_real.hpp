#pragma once

#include <cmath>
#include <limits>
#include <ostream>

#include "telegraph/error.hpp"

namespace telegraph {

/// A real number or +infinity. NaN is never stored.
class ExtReal {
 public:
  constexpr ExtReal() = default;
  constexpr ExtReal(double v) : value_(v) {  // NOLINT(google-explicit-constructor)
    if (v != v) throw Error(ErrorCode::DomainError, "ExtReal cannot hold NaN");
    if (v == -std::numeric_limits<double>::infinity())
      throw Error(ErrorCode::DomainError, "ExtReal cannot hold -inf");
  }

  static constexpr ExtReal infinity() {
    ExtReal r;
    r.value_ = std::numeric_limits<double>::infinity();
    return r;
  }

  constexpr bool is_finite() const { return value_ != std::numeric_limits<double>::infinity(); }
  constexpr bool is_infinite() const { return !is_finite(); }

  // Throws when infinite; use raw() to get the IEEE value instead.
  double value() const {
    if (is_infinite()) throw Error(ErrorCode::DomainError, "ExtReal is +inf");
    return value_;
  }
  constexpr double raw() const { return value_; }

  friend constexpr bool operator==(ExtReal a, ExtReal b) { return a.value_ == b.value_; }
  friend constexpr auto operator<=>(ExtReal a, ExtReal b) { return a.value_ <=> b.value_; }

  friend std::ostream& operator<<(std::ostream& os, ExtReal v) {
    if (v.is_infinite()) return os << "inf";
    return os << v.value_;
  }

 private:
  double value_ = 0.0;
};

}  // namespace telegraph
