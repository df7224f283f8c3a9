#include "bergman/sampling.hpp"

#include <cmath>
#include <random>

namespace bergman::sampling {

namespace {
constexpr unsigned kPrimes[] = {2,  3,  5,  7,  11, 13, 17, 19, 23, 29,
                                31, 37, 41, 43, 47, 53, 59, 61, 67, 71};
}

double halton(std::uint64_t index, unsigned base) {
  double f = 1.0;
  double r = 0.0;
  while (index > 0) {
    f /= base;
    r += f * static_cast<double>(index % base);
    index /= base;
  }
  return r;
}

HaltonSequence::HaltonSequence(int dim, std::uint64_t seed) : dim_(dim) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  shift_.resize(dim_);
  for (auto& s : shift_) s = uni(rng);
}

std::vector<double> HaltonSequence::next() {
  ++index_;
  std::vector<double> u(dim_);
  for (int j = 0; j < dim_; ++j) {
    double v = halton(index_, kPrimes[j % 20]) + shift_[j];
    u[j] = v - std::floor(v);
  }
  return u;
}

std::complex<double> disc_point(double u1, double u2, double radius) {
  const double rho = radius * std::sqrt(u1);
  const double theta = 2.0 * M_PI * u2;
  return {rho * std::cos(theta), rho * std::sin(theta)};
}

Eigen::VectorXcd ball_point(HaltonSequence& seq, int n, double radius, int max_attempts,
                            bool* ok) {
  Eigen::VectorXcd z(n);
  for (int attempt = 0; attempt < max_attempts; ++attempt) {
    const auto u = seq.next();
    double norm2 = 0.0;
    for (int j = 0; j < n; ++j) {
      const double re = 2.0 * u[2 * j] - 1.0;
      const double im = 2.0 * u[2 * j + 1] - 1.0;
      z[j] = std::complex<double>(re, im);
      norm2 += re * re + im * im;
    }
    if (norm2 < 1.0) {
      if (ok) *ok = true;
      return radius * z;
    }
  }
  if (ok) *ok = false;
  return Eigen::VectorXcd::Zero(n);
}

}  // namespace bergman::sampling
