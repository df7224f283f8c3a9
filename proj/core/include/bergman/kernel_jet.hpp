#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "bergman/reinhardt.hpp"

namespace bergman::kernel {

using Complex = std::complex<double>;

/// Diagonal Bergman kernel value at z together with the log-derivative
/// data up to the order needed for the sectional curvature.  All sums are
/// term-wise over the monomial series truncated at total degree T.
struct KernelJet {
  Eigen::VectorXcd z;
  int truncation = 0;
  double kappa = 0.0;
  Eigen::MatrixXcd metric;          // g_{j h-bar}
  Eigen::MatrixXcd metric_inverse;  // g^{nu mu-bar} as used in the curvature sum
  double min_metric_eigenvalue = 0.0;
  /// R[((h*d + j)*d + k)*d + l] = R_{h-bar j k l-bar}; empty when the jet
  /// was requested to metric order only.
  std::vector<Complex> curvature_tensor;
  double tail_relative = 0.0;  // certified bound on the relative series tail
};

struct JetOptions {
  int truncation = 60;
  double tail_tolerance = 1e-9;  // refuse the point if the tail bound exceeds this
  bool with_curvature = true;
};

/// Throws std::domain_error when the truncation tail cannot be certified
/// below tolerance (point too close to the boundary for the given T) and
/// std::runtime_error on a singular metric.
KernelJet kernel_jet(const ReinhardtDomain& domain, const Eigen::VectorXcd& z,
                     const JetOptions& options = {});

double kernel_value(const ReinhardtDomain& domain, const Eigen::VectorXcd& z, int T = 60);

/// B_D(z; xi) = sqrt(sum g_{j h-bar} xi_j conj(xi_h)).
double metric_length(const ReinhardtDomain& domain, const Eigen::VectorXcd& z,
                     const Eigen::VectorXcd& xi, int T = 60);
double metric_length(const KernelJet& jet, const Eigen::VectorXcd& xi);

/// H_D(z; xi) = sum R_{h-bar j k l-bar} conj(xi_h) xi_j xi_k conj(xi_l) / B^4.
double curvature_value(const ReinhardtDomain& domain, const Eigen::VectorXcd& z,
                       const Eigen::VectorXcd& xi, int T = 60);
double curvature_value(const KernelJet& jet, const Eigen::VectorXcd& xi);

}  // namespace bergman::kernel
