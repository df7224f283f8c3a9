#pragma once

#include <stdexcept>
#include <string>

#include "bergman/log_scalar.hpp"

namespace bergman {

/// Boundary flatness profile phi vanishing to infinite order at 0.
///
/// The shipped family is the power-exponential one,
///   phi(x) = exp(-1/x^m)  for x > 0,   phi(x) = 0  for x <= 0,
/// for which psi(x) = -1/log(phi(x)) = x^m exactly.  All values are
/// returned as LogScalar; the interesting arguments make phi far smaller
/// than the double underflow threshold.
class FlatProfile {
 public:
  enum class Family { kPowerExponential };

  explicit FlatProfile(int m, Family family = Family::kPowerExponential);

  /// Parses "exp:m", e.g. "exp:1" or "exp:2".
  static FlatProfile parse(const std::string& spec);

  int order() const { return m_; }
  Family family() const { return family_; }

  /// phi(x); zero for x <= 0.
  LogScalar eval(double x) const;

  /// phi evaluated at a log-domain argument x > 0 (x as LogScalar).
  LogScalar eval(const LogScalar& x) const;

  /// d^k phi / dx^k for k in 1..4; zero for x <= 0.
  LogScalar derivative(double x, int order) const;

  /// phi(r x) / phi(r), computed entirely in the log domain.
  LogScalar scaling_dichotomy(double x, double r) const;
  LogScalar scaling_dichotomy(const LogScalar& x, const LogScalar& r) const;

  /// The unique x > 0 with phi(x) = y, for y in (0, 1).
  /// In psi coordinates: x = (-1/log y)^(1/m).
  double inverse(const LogScalar& y) const;

  /// Same, but returned in the log domain (for y so small that x itself
  /// would not underflow, this is exact).
  LogScalar inverse_log(const LogScalar& y) const;

  /// psi(x) = -1/log(phi(x)) = x^m.
  double psi(double x) const;

 private:
  int m_;
  Family family_;
};

}  // namespace bergman
