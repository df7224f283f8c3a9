#pragma once

#include <complex>
#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "bergman/reinhardt.hpp"

namespace bergman::kernel {

/// Least L^2-norm-squared among holomorphic functions on the (truncated)
/// domain with prescribed jet constraints at z:
///   order 0: f(z) = 1
///   order 1: f(z) = 0, sum_j xi_j df/dz_j (z) = 1
///   order 2: f(z) = 0, df(z) = 0, sum_{k,l} xi_k xi_l d2f/dz_k dz_l (z) = 1
struct ExtremalResult {
  int order = 0;
  double value = 0.0;
  std::vector<MultiIndex> basis;
  Eigen::VectorXcd coefficients;
  double constraint_residual = 0.0;
};

ExtremalResult extremal(const ReinhardtDomain& domain, const Eigen::VectorXcd& z,
                        const Eigen::VectorXcd& xi, int order, int T = 60);

/// Residuals of the three reciprocity identities
///   |kappa I0 - 1|, |B^2 - I0/I1| / B^2, |H - (2 - I1^2/(I0 I2))|.
struct FuchsResiduals {
  double kernel = 0.0;
  double metric = 0.0;
  double curvature = 0.0;
  double max() const;
};

FuchsResiduals fuchs_check(const ReinhardtDomain& domain, const Eigen::VectorXcd& z,
                           const Eigen::VectorXcd& xi, int T = 60);

/// Biholomorphism with an explicitly known complex Jacobian, among the
/// shapes the identities are exercised on.
struct Biholomorphism {
  std::function<Eigen::VectorXcd(const Eigen::VectorXcd&)> map;
  std::function<Eigen::MatrixXcd(const Eigen::VectorXcd&)> jacobian;

  static Biholomorphism dilation(const std::vector<double>& lambda);
  static Biholomorphism unitary(const Eigen::MatrixXcd& U);
  /// (a - z1)/(1 - conj(a) z1) on the first coordinate, identity elsewhere.
  static Biholomorphism disc_automorphism(std::complex<double> a, int dim);
};

/// Residuals of I_j^{D1}(z; xi) |det J|^2 = I_j^{D2}(f(z); J xi), j = 0, 1, 2
/// (relative to the right-hand side).
struct TransformResiduals {
  double i0 = 0.0;
  double i1 = 0.0;
  double i2 = 0.0;
  double max() const;
};

TransformResiduals transform_check(const Biholomorphism& f, const ReinhardtDomain& d1,
                                   const ReinhardtDomain& d2, const Eigen::VectorXcd& z,
                                   const Eigen::VectorXcd& xi, int T = 60);

/// I_j monotonicity under inclusion sub in sup (1e-10 relative slack).
struct MonotonicityResult {
  bool i0 = false, i1 = false, i2 = false;
  double ratio_i0 = 0.0;  // I0^sub / I0^sup
  bool all() const { return i0 && i1 && i2; }
};

MonotonicityResult monotonicity_check(const ReinhardtDomain& sub, const ReinhardtDomain& sup,
                                      const Eigen::VectorXcd& z, const Eigen::VectorXcd& xi,
                                      int T = 60);

}  // namespace bergman::kernel
