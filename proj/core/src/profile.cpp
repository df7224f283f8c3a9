#include "bergman/profile.hpp"

#include <cmath>

namespace bergman {

FlatProfile::FlatProfile(int m, Family family) : m_(m), family_(family) {
  if (m < 1) throw std::invalid_argument("FlatProfile: flatness order m must be >= 1");
}

FlatProfile FlatProfile::parse(const std::string& spec) {
  if (spec.rfind("exp:", 0) != 0) {
    throw std::invalid_argument("profile spec must look like \"exp:m\", got \"" + spec + "\"");
  }
  const int m = std::stoi(spec.substr(4));
  return FlatProfile(m);
}

LogScalar FlatProfile::eval(double x) const {
  if (x <= 0.0) return LogScalar::zero();
  // log phi = -1/x^m
  return LogScalar::from_log(-std::pow(x, -static_cast<double>(m_)));
}

LogScalar FlatProfile::eval(const LogScalar& x) const {
  if (x.sign() <= 0) return LogScalar::zero();
  // -1/x^m = -exp(-m log x); the exponent itself may need clamping but for
  // exponentially small x the result is simply 0 in any representation
  // stronger than "log of log".  Saturate the exponent at -inf.
  const double log_exponent = -static_cast<double>(m_) * x.log_magnitude();
  if (log_exponent > 700.0) return LogScalar::zero();  // phi underflows even in log domain
  return LogScalar::from_log(-std::exp(log_exponent));
}

namespace {

// Derivatives of g(x) = -x^(-m):  g^(k)(x) = s * m(m+1)...(m+k-1) x^(-m-k),
// sign alternating starting positive at k = 1.
LogScalar g_derivative(int m, double x, int k) {
  double coeff = 1.0;
  for (int j = 0; j < k; ++j) coeff *= static_cast<double>(m + j);
  const int sign = (k % 2 == 1) ? 1 : -1;
  const double logmag = std::log(coeff) - (m + k) * std::log(x);
  return LogScalar::from_log(sign, logmag);
}

}  // namespace

LogScalar FlatProfile::derivative(double x, int order) const {
  if (order < 1 || order > 4) throw std::invalid_argument("FlatProfile::derivative: order must be in 1..4");
  if (x <= 0.0) return LogScalar::zero();

  const LogScalar g1 = g_derivative(m_, x, 1);
  const LogScalar g2 = g_derivative(m_, x, 2);
  const LogScalar g3 = g_derivative(m_, x, 3);
  const LogScalar g4 = g_derivative(m_, x, 4);

  // Faa di Bruno for (e^g)^(k): prefactors are Bell polynomials in g', g'', ...
  LogScalar pre;
  switch (order) {
    case 1:
      pre = g1;
      break;
    case 2:
      pre = g2 + g1 * g1;
      break;
    case 3:
      pre = g3 + LogScalar::from_value(3.0) * g1 * g2 + g1 * g1 * g1;
      break;
    default:
      pre = g4 + LogScalar::from_value(4.0) * g1 * g3 + LogScalar::from_value(3.0) * g2 * g2 +
            LogScalar::from_value(6.0) * g1 * g1 * g2 + g1 * g1 * g1 * g1;
      break;
  }
  return pre * eval(x);
}

LogScalar FlatProfile::scaling_dichotomy(double x, double r) const {
  return scaling_dichotomy(LogScalar::from_value(x), LogScalar::from_value(r));
}

LogScalar FlatProfile::scaling_dichotomy(const LogScalar& x, const LogScalar& r) const {
  if (x.sign() <= 0) throw std::invalid_argument("scaling_dichotomy: x must be > 0");
  if (r.sign() <= 0) throw std::invalid_argument("scaling_dichotomy: r must be > 0");
  // log(phi(rx)/phi(r)) = -1/(rx)^m + 1/r^m = (1 - x^(-m)) / r^m.
  const double one_minus = 1.0 - std::exp(-m_ * x.log_magnitude());
  const double log_rm = m_ * r.log_magnitude();
  if (one_minus == 0.0) return LogScalar::one();
  const double mag = std::log(std::fabs(one_minus)) - log_rm;
  const double log_ratio = (one_minus > 0 ? 1.0 : -1.0) * std::exp(std::min(mag, 700.0));
  return LogScalar::from_log(log_ratio);
}

double FlatProfile::inverse(const LogScalar& y) const {
  if (y.sign() <= 0 || y >= LogScalar::one()) {
    throw std::domain_error("FlatProfile::inverse: y must lie strictly between 0 and 1");
  }
  // x = (-1/log y)^(1/m)
  return std::pow(-1.0 / y.log_magnitude(), 1.0 / m_);
}

LogScalar FlatProfile::inverse_log(const LogScalar& y) const {
  if (y.sign() <= 0 || y >= LogScalar::one()) {
    throw std::domain_error("FlatProfile::inverse: y must lie strictly between 0 and 1");
  }
  const double log_x = -std::log(-y.log_magnitude()) / m_;
  return LogScalar::from_log(log_x);
}

double FlatProfile::psi(double x) const {
  if (x <= 0.0) return 0.0;
  return std::pow(x, m_);
}

}  // namespace bergman
