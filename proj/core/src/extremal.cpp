#include "bergman/extremal.hpp"

#include <cmath>
#include <stdexcept>

#include "bergman/kernel_jet.hpp"

namespace bergman::kernel {

namespace {

using Complex = std::complex<double>;

Complex monomial(const MultiIndex& alpha, const std::vector<std::vector<Complex>>& powers) {
  Complex v = 1.0;
  for (std::size_t i = 0; i < alpha.size(); ++i) v *= powers[i][alpha[i]];
  return v;
}

Complex monomial_d1(const MultiIndex& alpha, int j,
                    const std::vector<std::vector<Complex>>& powers) {
  if (alpha[j] == 0) return 0.0;
  Complex v = static_cast<double>(alpha[j]);
  for (std::size_t i = 0; i < alpha.size(); ++i) {
    const int p = alpha[i] - (static_cast<int>(i) == j ? 1 : 0);
    v *= powers[i][p];
  }
  return v;
}

Complex monomial_d2(const MultiIndex& alpha, int k, int l,
                    const std::vector<std::vector<Complex>>& powers) {
  MultiIndex a = alpha;
  double ff = 1.0;
  for (int idx : {k, l}) {
    if (a[idx] == 0) return 0.0;
    ff *= a[idx];
    a[idx] -= 1;
  }
  Complex v = ff;
  for (std::size_t i = 0; i < a.size(); ++i) v *= powers[i][a[i]];
  return v;
}

}  // namespace

ExtremalResult extremal(const ReinhardtDomain& domain, const Eigen::VectorXcd& z,
                        const Eigen::VectorXcd& xi, int order, int T) {
  const int d = domain.dim();
  if (z.size() != d) throw std::invalid_argument("extremal: point dimension mismatch");
  if (order < 0 || order > 2) throw std::invalid_argument("extremal: order must be 0, 1 or 2");
  if (order > 0 && (xi.size() != d || xi.norm() == 0.0)) {
    throw std::invalid_argument("extremal: nonzero direction required for order >= 1");
  }
  if (order == 2 && T < 2) throw std::invalid_argument("extremal: order 2 needs T >= 2");

  const auto basis = multi_indices_up_to(d, T);
  const int M = static_cast<int>(basis.size());

  std::vector<std::vector<Complex>> powers(d);
  for (int i = 0; i < d; ++i) {
    powers[i].resize(T + 1);
    powers[i][0] = 1.0;
    for (int k = 1; k <= T; ++k) powers[i][k] = powers[i][k - 1] * z[i];
  }

  // Constraint rows in the raw coefficient basis.
  const int rows = order == 0 ? 1 : (order == 1 ? 2 : 2 + d);
  Eigen::MatrixXcd L = Eigen::MatrixXcd::Zero(rows, M);
  Eigen::VectorXcd b = Eigen::VectorXcd::Zero(rows);
  b[rows - 1] = 1.0;
  for (int col = 0; col < M; ++col) {
    const auto& alpha = basis[col];
    L(0, col) = monomial(alpha, powers);
    if (order == 1) {
      Complex s = 0.0;
      for (int j = 0; j < d; ++j) s += xi[j] * monomial_d1(alpha, j, powers);
      L(1, col) = s;
    } else if (order == 2) {
      for (int j = 0; j < d; ++j) L(1 + j, col) = monomial_d1(alpha, j, powers);
      Complex s = 0.0;
      for (int k = 0; k < d; ++k) {
        for (int l = 0; l < d; ++l) s += xi[k] * xi[l] * monomial_d2(alpha, k, l, powers);
      }
      L(rows - 1, col) = s;
    }
  }

  // Least norm in the N_alpha-weighted inner product: with y = N^(1/2) c,
  // minimize |y| subject to (L N^(-1/2)) y = b.
  Eigen::VectorXd sqrtN(M);
  for (int col = 0; col < M; ++col) sqrtN[col] = std::sqrt(domain.moment(basis[col]));
  Eigen::MatrixXcd Lw = L;
  for (int col = 0; col < M; ++col) Lw.col(col) /= sqrtN[col];

  const Eigen::MatrixXcd G = Lw * Lw.adjoint();
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(G, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  if (sv[sv.size() - 1] <= 1e-13 * sv[0]) {
    throw std::runtime_error("extremal: rank-deficient constraint system");
  }
  const Eigen::VectorXcd w = svd.solve(b);
  const Eigen::VectorXcd y = Lw.adjoint() * w;

  ExtremalResult res;
  res.order = order;
  res.value = y.squaredNorm();
  res.basis = basis;
  res.coefficients = y.cwiseQuotient(sqrtN.cast<Complex>());
  res.constraint_residual = (L * res.coefficients - b).norm();
  if (res.constraint_residual > 1e-10 * std::max(1.0, b.norm())) {
    throw std::runtime_error("extremal: constraint residual above tolerance");
  }
  return res;
}

double FuchsResiduals::max() const { return std::max({kernel, metric, curvature}); }

FuchsResiduals fuchs_check(const ReinhardtDomain& domain, const Eigen::VectorXcd& z,
                           const Eigen::VectorXcd& xi, int T) {
  JetOptions o;
  o.truncation = T;
  const KernelJet jet = kernel_jet(domain, z, o);
  const double i0 = extremal(domain, z, xi, 0, T).value;
  const double i1 = extremal(domain, z, xi, 1, T).value;
  const double i2 = extremal(domain, z, xi, 2, T).value;
  const double B = metric_length(jet, xi);
  const double H = curvature_value(jet, xi);
  FuchsResiduals r;
  r.kernel = std::fabs(jet.kappa * i0 - 1.0);
  r.metric = std::fabs(B * B - i0 / i1) / (B * B);
  r.curvature = std::fabs(H - (2.0 - i1 * i1 / (i0 * i2)));
  return r;
}

Biholomorphism Biholomorphism::dilation(const std::vector<double>& lambda) {
  Biholomorphism f;
  f.map = [lambda](const Eigen::VectorXcd& z) {
    Eigen::VectorXcd w = z;
    for (int i = 0; i < z.size(); ++i) w[i] *= lambda[i];
    return w;
  };
  f.jacobian = [lambda](const Eigen::VectorXcd& z) {
    Eigen::MatrixXcd J = Eigen::MatrixXcd::Zero(z.size(), z.size());
    for (int i = 0; i < z.size(); ++i) J(i, i) = lambda[i];
    return J;
  };
  return f;
}

Biholomorphism Biholomorphism::unitary(const Eigen::MatrixXcd& U) {
  Biholomorphism f;
  f.map = [U](const Eigen::VectorXcd& z) { return Eigen::VectorXcd(U * z); };
  f.jacobian = [U](const Eigen::VectorXcd&) { return U; };
  return f;
}

Biholomorphism Biholomorphism::disc_automorphism(Complex a, int dim) {
  Biholomorphism f;
  f.map = [a, dim](const Eigen::VectorXcd& z) {
    Eigen::VectorXcd w = z;
    w[0] = (a - z[0]) / (1.0 - std::conj(a) * z[0]);
    return w;
  };
  f.jacobian = [a, dim](const Eigen::VectorXcd& z) {
    Eigen::MatrixXcd J = Eigen::MatrixXcd::Identity(dim, dim);
    const Complex den = 1.0 - std::conj(a) * z[0];
    J(0, 0) = (std::norm(a) - 1.0) / (den * den);
    return J;
  };
  return f;
}

double TransformResiduals::max() const { return std::max({i0, i1, i2}); }

TransformResiduals transform_check(const Biholomorphism& f, const ReinhardtDomain& d1,
                                   const ReinhardtDomain& d2, const Eigen::VectorXcd& z,
                                   const Eigen::VectorXcd& xi, int T) {
  const Eigen::VectorXcd fz = f.map(z);
  const Eigen::MatrixXcd J = f.jacobian(z);
  const double det2 = std::norm(J.determinant());
  const Eigen::VectorXcd Jxi = J * xi;
  TransformResiduals r;
  const double lhs0 = extremal(d1, z, xi, 0, T).value * det2;
  const double rhs0 = extremal(d2, fz, Jxi, 0, T).value;
  r.i0 = std::fabs(lhs0 - rhs0) / std::fabs(rhs0);
  const double lhs1 = extremal(d1, z, xi, 1, T).value * det2;
  const double rhs1 = extremal(d2, fz, Jxi, 1, T).value;
  r.i1 = std::fabs(lhs1 - rhs1) / std::fabs(rhs1);
  const double lhs2 = extremal(d1, z, xi, 2, T).value * det2;
  const double rhs2 = extremal(d2, fz, Jxi, 2, T).value;
  r.i2 = std::fabs(lhs2 - rhs2) / std::fabs(rhs2);
  return r;
}

MonotonicityResult monotonicity_check(const ReinhardtDomain& sub, const ReinhardtDomain& sup,
                                      const Eigen::VectorXcd& z, const Eigen::VectorXcd& xi,
                                      int T) {
  MonotonicityResult r;
  const double slack = 1e-10;
  const double s0 = extremal(sub, z, xi, 0, T).value;
  const double p0 = extremal(sup, z, xi, 0, T).value;
  r.i0 = s0 <= p0 * (1.0 + slack);
  r.ratio_i0 = s0 / p0;
  const double s1 = extremal(sub, z, xi, 1, T).value;
  const double p1 = extremal(sup, z, xi, 1, T).value;
  r.i1 = s1 <= p1 * (1.0 + slack);
  const double s2 = extremal(sub, z, xi, 2, T).value;
  const double p2 = extremal(sup, z, xi, 2, T).value;
  r.i2 = s2 <= p2 * (1.0 + slack);
  return r;
}

}  // namespace bergman::kernel
