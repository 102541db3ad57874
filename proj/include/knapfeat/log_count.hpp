#pragma once

#include <cmath>
#include <cstdint>
#include <limits>

#include "knapfeat/errors.hpp"

namespace knapfeat {

/// A nonnegative count stored as its binary logarithm.
///
/// Counts of maximal solutions routinely exceed 10^100, far beyond any
/// integer type, but only their order of magnitude matters downstream.
/// The count 0 is the sentinel -infinity; a count x > 0 carries log2(x)
/// in a plain double.
class LogCount {
public:
  LogCount() : log2_(kNegInf) {}

  static LogCount zero() { return LogCount(); }
  static LogCount one() { return from_log2(0.0); }

  static LogCount from_log2(double v) {
    LogCount c;
    c.log2_ = v;
    return c;
  }

  static LogCount of(std::uint64_t count) {
    return count == 0 ? zero() : from_log2(std::log2(static_cast<double>(count)));
  }

  /// Log form of a nonnegative real (0 maps to the zero sentinel).
  static LogCount of_real(double x) {
    return x == 0.0 ? zero() : from_log2(std::log2(x));
  }

  bool is_zero() const { return std::isinf(log2_) && log2_ < 0.0; }
  double log2() const { return log2_; }

  /// The plain value 2^log2; throws Overflow once past the double range.
  double to_double() const {
    if (is_zero()) return 0.0;
    const double v = std::exp2(log2_);
    if (!std::isfinite(v)) throw Overflow("log-domain count exceeds double range");
    return v;
  }

  /// log2(2^a + 2^b), evaluated as max + log2(1 + 2^-|a-b|) so the larger
  /// operand anchors the result. Symmetric, hence bit-exact commutative.
  friend LogCount operator+(LogCount a, LogCount b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    const double hi = std::max(a.log2_, b.log2_);
    const double lo = std::min(a.log2_, b.log2_);
    const double d = hi - lo;
    if (d > 64.0) return from_log2(hi);  // addend is below any tolerance we track
    return from_log2(hi + std::log1p(std::exp2(-d)) * kInvLn2);
  }

  friend LogCount operator*(LogCount a, LogCount b) {
    if (a.is_zero() || b.is_zero()) return zero();
    return from_log2(a.log2_ + b.log2_);
  }

  LogCount& operator+=(LogCount b) { return *this = *this + b; }
  LogCount& operator*=(LogCount b) { return *this = *this * b; }

  friend bool operator==(LogCount a, LogCount b) {
    return (a.is_zero() && b.is_zero()) || a.log2_ == b.log2_;
  }
  friend bool operator<(LogCount a, LogCount b) { return a.log2_ < b.log2_; }

private:
  static constexpr double kNegInf = -std::numeric_limits<double>::infinity();
  static constexpr double kInvLn2 = 1.4426950408889634074;  // 1/ln(2)

  double log2_;
};

}  // namespace knapfeat
