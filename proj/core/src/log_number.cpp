#include "bdfeas/log_number.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>

#include "bdfeas/error.hpp"

namespace bdfeas {

LogNumber LogNumber::from_log10(double log10_value) {
  if (std::isnan(log10_value)) throw ParameterError("log10 value is NaN");
  if (log10_value == -std::numeric_limits<double>::infinity()) return zero();
  if (std::isinf(log10_value)) throw ParameterError("log10 value is +inf");
  LogNumber out;
  out.log10_ = log10_value;
  out.zero_ = false;
  return out;
}

LogNumber LogNumber::from_value(double value) {
  if (!(value >= 0.0) || std::isinf(value)) {
    throw ParameterError("LogNumber needs a finite nonnegative value");
  }
  if (value == 0.0) return zero();
  return from_log10(std::log10(value));
}

double LogNumber::log10() const noexcept {
  return zero_ ? -std::numeric_limits<double>::infinity() : log10_;
}

double LogNumber::ln() const noexcept { return log10() * std::numbers::ln10; }

double LogNumber::value() const noexcept { return zero_ ? 0.0 : std::pow(10.0, log10_); }

LogNumber LogNumber::pow(double exponent) const {
  if (zero_) {
    if (exponent <= 0.0) throw ParameterError("zero raised to a nonpositive power");
    return zero();
  }
  return from_log10(log10_ * exponent);
}

LogNumber operator*(const LogNumber& a, const LogNumber& b) {
  if (a.zero_ || b.zero_) return LogNumber::zero();
  return LogNumber::from_log10(a.log10_ + b.log10_);
}

LogNumber operator/(const LogNumber& a, const LogNumber& b) {
  if (b.zero_) throw ParameterError("division by zero LogNumber");
  if (a.zero_) return LogNumber::zero();
  return LogNumber::from_log10(a.log10_ - b.log10_);
}

LogNumber operator+(const LogNumber& a, const LogNumber& b) {
  if (a.zero_) return b;
  if (b.zero_) return a;
  const double hi = std::max(a.log10_, b.log10_);
  const double lo = std::min(a.log10_, b.log10_);
  // log10(10^hi + 10^lo) = hi + log10(1 + 10^(lo - hi))
  const double ratio = std::pow(10.0, lo - hi);
  return LogNumber::from_log10(hi + std::log1p(ratio) / std::numbers::ln10);
}

LogNumber operator-(const LogNumber& a, const LogNumber& b) {
  if (b.zero_) return a;
  if (a.zero_ || b.log10_ > a.log10_) {
    throw ParameterError("LogNumber subtraction would be negative");
  }
  if (a.log10_ == b.log10_) return LogNumber::zero();
  const double ratio = std::pow(10.0, b.log10_ - a.log10_);
  return LogNumber::from_log10(a.log10_ + std::log1p(-ratio) / std::numbers::ln10);
}

std::string LogNumber::to_string(int digits) const {
  if (zero_) return "0";
  const double exponent = std::floor(log10_);
  double mantissa = std::pow(10.0, log10_ - exponent);
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*fe%.0f", digits, mantissa, exponent);
  return buf;
}

}  // namespace bdfeas
