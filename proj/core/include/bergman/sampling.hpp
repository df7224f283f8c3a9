#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

namespace bergman::sampling {

/// Radical-inverse (Halton) value of index i in the given prime base.
double halton(std::uint64_t index, unsigned base);

/// Low-discrepancy sequence in [0,1)^dim with a seeded Cranley-Patterson
/// rotation so that different seeds decorrelate while a fixed seed stays
/// byte-reproducible.
class HaltonSequence {
 public:
  HaltonSequence(int dim, std::uint64_t seed);

  std::vector<double> next();

 private:
  int dim_;
  std::uint64_t index_ = 0;
  std::vector<double> shift_;
};

/// Area-uniform point of the complex disc of given radius from two
/// uniforms.
std::complex<double> disc_point(double u1, double u2, double radius);

/// Volume-uniform point of the complex n-ball of given radius; consumes
/// 2n+1 uniforms (direction from a Box-Muller-free inversion is avoided:
/// box rejection is driven by the caller's sequence).
Eigen::VectorXcd ball_point(HaltonSequence& seq, int n, double radius, int max_attempts,
                            bool* ok);

}  // namespace bergman::sampling
