#include "bergman/kernel_jet.hpp"

#include <cmath>
#include <stdexcept>

namespace bergman::kernel {

namespace {

// Derivative multi-indices of order <= 2 in d variables, indexed
// 0 (empty), 1..d (e_i), then pairs e_i + e_j with i <= j.
struct DerivSet {
  int d;
  std::vector<MultiIndex> list;
  std::vector<std::vector<int>> pair_index;  // pair_index[i][j] for i <= j

  explicit DerivSet(int dim) : d(dim), pair_index(dim, std::vector<int>(dim, -1)) {
    list.push_back(MultiIndex(d, 0));
    for (int i = 0; i < d; ++i) {
      MultiIndex a(d, 0);
      a[i] = 1;
      list.push_back(a);
    }
    for (int i = 0; i < d; ++i) {
      for (int j = i; j < d; ++j) {
        MultiIndex a(d, 0);
        a[i] += 1;
        a[j] += 1;
        pair_index[i][j] = pair_index[j][i] = static_cast<int>(list.size());
        list.push_back(a);
      }
    }
  }

  int single(int i) const { return 1 + i; }
  int pair(int i, int j) const { return pair_index[i][j]; }
};

// d^a z^alpha evaluated with precomputed coordinate powers.
Complex apply_derivative(const MultiIndex& alpha, const MultiIndex& a,
                         const std::vector<std::vector<Complex>>& powers) {
  Complex v = 1.0;
  for (std::size_t i = 0; i < alpha.size(); ++i) {
    if (a[i] > alpha[i]) return 0.0;
    double ff = 1.0;
    for (int k = 0; k < a[i]; ++k) ff *= alpha[i] - k;
    v *= ff * powers[i][alpha[i] - a[i]];
  }
  return v;
}

// Certified bound on the relative truncation tail of the kernel series
// and its derivative sums: with an inscribed polydisc of radii r_i and
// q = max |z_i|^2 / r_i^2 < 1,
//   N_alpha >= prod pi r_i^(2 alpha_i + 2) / (alpha_i + 1),
// so each degree-k tail term is at most
//   prod (alpha_i + 1) / (pi r_i^2) * q^k,
// and sum over |alpha| = k of prod(alpha_i + 1) equals C(k + 2d - 1, 2d - 1).
// Derivative factors are absorbed by a conservative (k+1)^4 / r_min^4.
double tail_bound(const ReinhardtDomain& domain, const Eigen::VectorXcd& z, int T) {
  const auto radii = domain.inscribed_radii();
  const int d = domain.dim();
  double q = 0.0;
  double log_pref = 0.0;
  double r_min = radii[0];
  for (int i = 0; i < d; ++i) {
    q = std::max(q, std::norm(z[i]) / (radii[i] * radii[i]));
    log_pref -= std::log(M_PI * radii[i] * radii[i]);
    r_min = std::min(r_min, radii[i]);
  }
  if (q >= 0.99) throw std::domain_error("kernel_jet: point too close to the boundary");
  log_pref += 4.0 * std::log(1.0 / r_min);
  const double log_q = std::log(std::max(q, 1e-300));
  double total = 0.0;
  for (int k = T + 1; k < T + 4000; ++k) {
    const double lterm = log_pref + std::lgamma(k + 2.0 * d) - std::lgamma(k + 1.0) -
                         std::lgamma(2.0 * d) + 4.0 * std::log(k + 1.0) + k * log_q;
    const double term = std::exp(lterm);
    total += term;
    if (term < 1e-18 * std::max(total, 1e-300) && k > T + 8) break;
  }
  return total;
}

}  // namespace

KernelJet kernel_jet(const ReinhardtDomain& domain, const Eigen::VectorXcd& z,
                     const JetOptions& options) {
  const int d = domain.dim();
  if (z.size() != d) throw std::invalid_argument("kernel_jet: point dimension mismatch");
  const int T = options.truncation;
  const DerivSet ds(d);
  const int M = static_cast<int>(ds.list.size());

  std::vector<std::vector<Complex>> powers(d);
  for (int i = 0; i < d; ++i) {
    powers[i].resize(T + 1);
    powers[i][0] = 1.0;
    for (int k = 1; k <= T; ++k) powers[i][k] = powers[i][k - 1] * z[i];
  }

  // F(a, b) = sum_alpha d^a(z^alpha) conj(d^b(z^alpha)) / N_alpha.
  Eigen::MatrixXcd F = Eigen::MatrixXcd::Zero(M, M);
  std::vector<Complex> v(M);
  for (const auto& alpha : multi_indices_up_to(d, T)) {
    const double N = domain.moment(alpha);
    for (int a = 0; a < M; ++a) v[a] = apply_derivative(alpha, ds.list[a], powers);
    for (int a = 0; a < M; ++a) {
      if (v[a] == Complex(0.0)) continue;
      for (int b = 0; b < M; ++b) {
        F(a, b) += v[a] * std::conj(v[b]) / N;
      }
    }
  }

  KernelJet jet;
  jet.z = z;
  jet.truncation = T;
  const double f = F(0, 0).real();
  if (!(f > 0.0)) throw std::runtime_error("kernel_jet: non-positive kernel sum");
  jet.kappa = f;

  const double tail = tail_bound(domain, z, T) / f;
  jet.tail_relative = tail;
  if (tail > options.tail_tolerance) {
    throw std::domain_error("kernel_jet: truncation tail not certified at this point");
  }

  // getF with barred side conjugated: the accumulated F(a, b) already is
  // d^a(series) against conj(d^b(series)).
  const auto Fu = [&](int a, int b) { return F(a, b); };
  const int e0 = 0;

  // Metric g_{j h-bar} = F_{j h-bar}/f - F_j F_{h-bar} / f^2.
  Eigen::MatrixXcd g(d, d);
  for (int j = 0; j < d; ++j) {
    for (int h = 0; h < d; ++h) {
      g(j, h) = Fu(ds.single(j), ds.single(h)) / f -
                Fu(ds.single(j), e0) * Fu(e0, ds.single(h)) / (f * f);
    }
  }
  jet.metric = g;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(0.5 * (g + g.adjoint()));
  jet.min_metric_eigenvalue = es.eigenvalues().minCoeff();
  if (jet.min_metric_eigenvalue <= 0.0) {
    throw std::runtime_error("kernel_jet: metric is not positive definite");
  }
  jet.metric_inverse = g.inverse().conjugate();  // g^{nu mu-bar}

  if (!options.with_curvature) return jet;

  // Third order: L3[k][j][h] = d_k d_j dbar_h log kappa.
  std::vector<Complex> L3(d * d * d);
  const auto l3 = [&](int k, int j, int h) -> Complex& { return L3[(k * d + j) * d + h]; };
  for (int k = 0; k < d; ++k) {
    for (int j = 0; j < d; ++j) {
      for (int h = 0; h < d; ++h) {
        const Complex Fkj = Fu(ds.pair(k, j), e0);
        const Complex Fkjh = Fu(ds.pair(k, j), ds.single(h));
        const Complex Fj = Fu(ds.single(j), e0);
        const Complex Fk = Fu(ds.single(k), e0);
        const Complex Fhb = Fu(e0, ds.single(h));
        const Complex Fjh = Fu(ds.single(j), ds.single(h));
        const Complex Fkh = Fu(ds.single(k), ds.single(h));
        l3(k, j, h) = Fkjh / f - (Fkj * Fhb + Fjh * Fk + Fkh * Fj) / (f * f) +
                      2.0 * Fj * Fk * Fhb / (f * f * f);
      }
    }
  }

  // Fourth order L4[k][j][l][h] = d_k d_j dbar_l dbar_h log kappa, then
  // R_{h-bar j k l-bar} = -L4 + sum g^{nu mu-bar} L3(k,j,mu) conj(L3(l,h,nu)).
  jet.curvature_tensor.assign(d * d * d * d, Complex(0.0));
  const auto R = [&](int h, int j, int k, int l) -> Complex& {
    return jet.curvature_tensor[((h * d + j) * d + k) * d + l];
  };
  const double f2 = f * f, f3 = f2 * f, f4 = f3 * f;
  for (int k = 0; k < d; ++k) {
    for (int j = 0; j < d; ++j) {
      for (int l = 0; l < d; ++l) {
        for (int h = 0; h < d; ++h) {
          const Complex Fj = Fu(ds.single(j), e0);
          const Complex Fk = Fu(ds.single(k), e0);
          const Complex Flb = Fu(e0, ds.single(l));
          const Complex Fhb = Fu(e0, ds.single(h));
          const Complex Fkj = Fu(ds.pair(k, j), e0);
          const Complex Flhb = Fu(e0, ds.pair(l, h));
          const Complex Fjl = Fu(ds.single(j), ds.single(l));
          const Complex Fjh = Fu(ds.single(j), ds.single(h));
          const Complex Fkl = Fu(ds.single(k), ds.single(l));
          const Complex Fkh = Fu(ds.single(k), ds.single(h));
          const Complex Fkjh = Fu(ds.pair(k, j), ds.single(h));
          const Complex Fkjl = Fu(ds.pair(k, j), ds.single(l));
          const Complex Fjlh = Fu(ds.single(j), ds.pair(l, h));
          const Complex Fklh = Fu(ds.single(k), ds.pair(l, h));
          const Complex Fkjlh = Fu(ds.pair(k, j), ds.pair(l, h));

          const Complex L4 =
              Fkjlh / f -
              (Fkjh * Flb + Fkjl * Fhb + Fkj * Flhb + Fjlh * Fk + Fjh * Fkl + Fklh * Fj +
               Fkh * Fjl) / f2 +
              2.0 * (Fkj * Fhb * Flb + Fjh * Fk * Flb + Fkh * Fj * Flb + Fjl * Fk * Fhb +
                     Fj * Fkl * Fhb + Fj * Fk * Flhb) / f3 -
              6.0 * Fj * Fk * Fhb * Flb / f4;

          Complex corr = 0.0;
          for (int nu = 0; nu < d; ++nu) {
            for (int mu = 0; mu < d; ++mu) {
              corr += jet.metric_inverse(nu, mu) * l3(k, j, mu) * std::conj(l3(l, h, nu));
            }
          }
          R(h, j, k, l) = -L4 + corr;
        }
      }
    }
  }
  return jet;
}

double kernel_value(const ReinhardtDomain& domain, const Eigen::VectorXcd& z, int T) {
  JetOptions o;
  o.truncation = T;
  o.with_curvature = false;
  return kernel_jet(domain, z, o).kappa;
}

double metric_length(const KernelJet& jet, const Eigen::VectorXcd& xi) {
  const int d = static_cast<int>(jet.metric.rows());
  Complex b2 = 0.0;
  for (int j = 0; j < d; ++j) {
    for (int h = 0; h < d; ++h) {
      b2 += jet.metric(j, h) * xi[j] * std::conj(xi[h]);
    }
  }
  if (b2.real() < 0.0) throw std::runtime_error("metric_length: negative squared length");
  return std::sqrt(b2.real());
}

double metric_length(const ReinhardtDomain& domain, const Eigen::VectorXcd& z,
                     const Eigen::VectorXcd& xi, int T) {
  JetOptions o;
  o.truncation = T;
  o.with_curvature = false;
  return metric_length(kernel_jet(domain, z, o), xi);
}

double curvature_value(const KernelJet& jet, const Eigen::VectorXcd& xi) {
  const int d = static_cast<int>(jet.metric.rows());
  if (jet.curvature_tensor.empty()) {
    throw std::invalid_argument("curvature_value: jet lacks curvature data");
  }
  if (xi.norm() == 0.0) throw std::invalid_argument("curvature_value: xi must be nonzero");
  Complex num = 0.0;
  for (int h = 0; h < d; ++h) {
    for (int j = 0; j < d; ++j) {
      for (int k = 0; k < d; ++k) {
        for (int l = 0; l < d; ++l) {
          num += jet.curvature_tensor[((h * d + j) * d + k) * d + l] * std::conj(xi[h]) *
                 xi[j] * xi[k] * std::conj(xi[l]);
        }
      }
    }
  }
  const double b = metric_length(jet, xi);
  return num.real() / (b * b * b * b);
}

double curvature_value(const ReinhardtDomain& domain, const Eigen::VectorXcd& z,
                       const Eigen::VectorXcd& xi, int T) {
  JetOptions o;
  o.truncation = T;
  return curvature_value(kernel_jet(domain, z, o), xi);
}

}  // namespace bergman::kernel
