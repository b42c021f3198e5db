#pragma once

#include <compare>
#include <string>

namespace bdfeas {

/// Nonnegative real stored as its base-10 logarithm, for quantities such as
/// 256^307200 that overflow a double. Multiplication, division, powers and
/// roots are exact in log space; addition and subtraction use log-sum-exp.
class LogNumber {
 public:
  /// Zero.
  constexpr LogNumber() = default;

  static LogNumber zero() { return LogNumber(); }
  static LogNumber one() { return from_log10(0.0); }
  static LogNumber from_log10(double log10_value);
  static LogNumber from_value(double value);

  bool is_zero() const noexcept { return zero_; }
  /// -infinity for zero.
  double log10() const noexcept;
  double ln() const noexcept;
  /// Native value; may overflow to +inf.
  double value() const noexcept;

  LogNumber pow(double exponent) const;
  LogNumber sqrt() const { return pow(0.5); }

  friend LogNumber operator*(const LogNumber& a, const LogNumber& b);
  friend LogNumber operator/(const LogNumber& a, const LogNumber& b);
  friend LogNumber operator+(const LogNumber& a, const LogNumber& b);
  /// Requires a >= b; the difference must stay nonnegative.
  friend LogNumber operator-(const LogNumber& a, const LogNumber& b);

  friend std::partial_ordering operator<=>(const LogNumber& a, const LogNumber& b) noexcept {
    return a.log10() <=> b.log10();
  }
  friend bool operator==(const LogNumber& a, const LogNumber& b) noexcept {
    return a.zero_ == b.zero_ && (a.zero_ || a.log10_ == b.log10_);
  }

  /// "1.234e5678"-style rendering.
  std::string to_string(int digits = 4) const;

 private:
  double log10_ = 0.0;
  bool zero_ = true;
};

}  // namespace bdfeas
