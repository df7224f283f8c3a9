#pragma once

#include <cmath>
#include <limits>
#include <optional>
#include <string>

namespace bergman {

/// Signed scalar carried in the log domain.  Quantities such as
/// t = exp(-100000) appear throughout the scaling computations; they are
/// far below the double underflow threshold, so the magnitude is stored
/// as log|x| together with an explicit sign.
///
/// Multiplication, division and powers are exact in the log field.
/// Addition uses log-sum-exp (with signed cancellation when the operands
/// have opposite signs).  Conversion back to a plain double is explicit
/// and reports overflow/underflow instead of silently saturating.
class LogScalar {
 public:
  constexpr LogScalar() = default;

  static LogScalar from_value(double x) {
    LogScalar r;
    if (x == 0.0 || std::isnan(x)) {
      r.sign_ = 0;
      r.log_ = -std::numeric_limits<double>::infinity();
    } else {
      r.sign_ = x > 0 ? 1 : -1;
      r.log_ = std::log(std::fabs(x));
    }
    return r;
  }

  /// Positive value exp(log_magnitude).
  static LogScalar from_log(double log_magnitude) {
    LogScalar r;
    r.sign_ = 1;
    r.log_ = log_magnitude;
    return r;
  }

  static LogScalar from_log(int sign, double log_magnitude) {
    LogScalar r;
    if (sign == 0 || log_magnitude == -std::numeric_limits<double>::infinity()) {
      return LogScalar{};
    }
    r.sign_ = sign > 0 ? 1 : -1;
    r.log_ = log_magnitude;
    return r;
  }

  static LogScalar zero() { return LogScalar{}; }
  static LogScalar one() { return from_log(0.0); }

  int sign() const { return sign_; }
  bool is_zero() const { return sign_ == 0; }

  /// log of the magnitude; -inf for zero.
  double log_magnitude() const { return log_; }

  LogScalar abs() const { return from_log(sign_ == 0 ? 0 : 1, log_); }

  LogScalar operator-() const { return from_log(-sign_, log_); }

  friend LogScalar operator*(const LogScalar& a, const LogScalar& b) {
    if (a.sign_ == 0 || b.sign_ == 0) return LogScalar{};
    return from_log(a.sign_ * b.sign_, a.log_ + b.log_);
  }

  friend LogScalar operator/(const LogScalar& a, const LogScalar& b) {
    if (b.sign_ == 0) return from_log(a.sign_, std::numeric_limits<double>::infinity());
    if (a.sign_ == 0) return LogScalar{};
    return from_log(a.sign_ * b.sign_, a.log_ - b.log_);
  }

  friend LogScalar operator+(const LogScalar& a, const LogScalar& b) {
    if (a.sign_ == 0) return b;
    if (b.sign_ == 0) return a;
    const LogScalar& hi = a.log_ >= b.log_ ? a : b;
    const LogScalar& lo = a.log_ >= b.log_ ? b : a;
    const double diff = lo.log_ - hi.log_;  // <= 0
    if (hi.sign_ == lo.sign_) {
      return from_log(hi.sign_, hi.log_ + std::log1p(std::exp(diff)));
    }
    if (diff == 0.0) return LogScalar{};  // exact cancellation
    const double arg = -std::expm1(diff);  // in (0, 1)
    return from_log(hi.sign_, hi.log_ + std::log(arg));
  }

  friend LogScalar operator-(const LogScalar& a, const LogScalar& b) { return a + (-b); }

  /// |x|^e with the sign of x preserved for odd-integer semantics left to
  /// the caller; defined for x >= 0 (or any x when the result sign is the
  /// sign of x and e maps magnitudes only).
  LogScalar pow(double e) const {
    if (sign_ == 0) return LogScalar{};
    return from_log(sign_, log_ * e);
  }

  LogScalar sqrt() const { return pow(0.5); }

  friend bool operator==(const LogScalar& a, const LogScalar& b) {
    return a.sign_ == b.sign_ && (a.sign_ == 0 || a.log_ == b.log_);
  }

  friend bool operator<(const LogScalar& a, const LogScalar& b) {
    if (a.sign_ != b.sign_) return a.sign_ < b.sign_;
    if (a.sign_ == 0) return false;
    return a.sign_ > 0 ? a.log_ < b.log_ : a.log_ > b.log_;
  }
  friend bool operator>(const LogScalar& a, const LogScalar& b) { return b < a; }
  friend bool operator<=(const LogScalar& a, const LogScalar& b) { return !(b < a); }
  friend bool operator>=(const LogScalar& a, const LogScalar& b) { return !(a < b); }

  /// Plain double value, or nullopt if the magnitude falls outside the
  /// representable range.
  std::optional<double> to_value() const {
    if (sign_ == 0) return 0.0;
    if (log_ > kMaxLog || log_ < kMinLog) return std::nullopt;
    return sign_ * std::exp(log_);
  }

  /// Double value with out-of-range magnitudes clamped to 0 or +-inf.
  double to_value_clamped() const {
    if (sign_ == 0) return 0.0;
    if (log_ < kMinLog) return 0.0;
    if (log_ > kMaxLog) return sign_ * std::numeric_limits<double>::infinity();
    return sign_ * std::exp(log_);
  }

  /// "1.234e-5" when in range, "exp(-12345.6)" (signed) otherwise.
  std::string to_string() const;

  static constexpr double kMaxLog = 700.0;
  static constexpr double kMinLog = -700.0;

 private:
  int sign_ = 0;
  double log_ = -std::numeric_limits<double>::infinity();
};

inline LogScalar abs(const LogScalar& x) { return x.abs(); }

}  // namespace bergman
