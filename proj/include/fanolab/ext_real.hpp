#pragma once

#include <cmath>
#include <compare>
#include <limits>
#include <ostream>

#include "fanolab/errors.hpp"

namespace fanolab {

/// Non-negative extended real: a finite value >= 0 or +infinity.
///
/// Arithmetic follows measure-theoretic conventions rather than IEEE ones:
/// 0 * inf = 0, x / 0 = inf for x > 0, and 0 / 0 = 0. A value of this type is
/// never NaN.
class ExtReal {
 public:
  constexpr ExtReal() = default;

  /// Accepts any v >= 0; an IEEE +inf maps to the infinite state.
  static ExtReal of(double v) {
    if (std::isnan(v) || v < 0.0) {
      throw Error(ErrorCode::InvalidArgument, "extended real must be >= 0 and not NaN");
    }
    if (std::isinf(v)) return infinity();
    return ExtReal(v, false);
  }

  /// Like of(), but maps slightly negative values (round-off from sums of
  /// signed terms) to zero.
  static ExtReal clamped(double v) {
    if (std::isnan(v)) throw Error(ErrorCode::InvalidArgument, "extended real is NaN");
    return of(v < 0.0 ? 0.0 : v);
  }

  static constexpr ExtReal infinity() { return ExtReal(0.0, true); }
  static constexpr ExtReal zero() { return ExtReal(); }

  constexpr bool is_infinite() const { return infinite_; }
  constexpr bool is_finite() const { return !infinite_; }
  constexpr bool is_zero() const { return !infinite_ && value_ == 0.0; }

  /// Finite payload; +inf (IEEE) for the infinite state.
  constexpr double to_double() const {
    return infinite_ ? std::numeric_limits<double>::infinity() : value_;
  }

  friend constexpr ExtReal operator+(ExtReal a, ExtReal b) {
    if (a.infinite_ || b.infinite_) return infinity();
    return ExtReal(a.value_ + b.value_, false);
  }

  friend constexpr ExtReal operator*(ExtReal a, ExtReal b) {
    if (a.is_zero() || b.is_zero()) return ExtReal();
    if (a.infinite_ || b.infinite_) return infinity();
    return ExtReal(a.value_ * b.value_, false);
  }

  /// Multiplication by a finite non-negative factor, with 0 * inf = 0.
  ExtReal scaled(double factor) const { return *this * of(factor); }

  ExtReal& operator+=(ExtReal other) { return *this = *this + other; }

  friend constexpr bool operator==(ExtReal a, ExtReal b) {
    return a.infinite_ == b.infinite_ && (a.infinite_ || a.value_ == b.value_);
  }

  friend constexpr std::partial_ordering operator<=>(ExtReal a, ExtReal b) {
    if (a.infinite_ || b.infinite_) {
      return static_cast<int>(a.infinite_) <=> static_cast<int>(b.infinite_);
    }
    return a.value_ <=> b.value_;
  }

  friend std::ostream& operator<<(std::ostream& os, ExtReal x) {
    if (x.infinite_) return os << "inf";
    return os << x.value_;
  }

 private:
  constexpr ExtReal(double v, bool inf) : value_(v), infinite_(inf) {}

  double value_ = 0.0;
  bool infinite_ = false;
};

/// num / den for num, den >= 0 under the 0/0 = 0 and x/0 = inf conventions.
inline ExtReal ext_divide(double num, double den) {
  if (num < 0.0 || den < 0.0 || std::isnan(num) || std::isnan(den)) {
    throw Error(ErrorCode::InvalidArgument, "ext_divide expects non-negative operands");
  }
  if (den == 0.0) return num == 0.0 ? ExtReal::zero() : ExtReal::infinity();
  return ExtReal::of(num / den);
}

}  // namespace fanolab
