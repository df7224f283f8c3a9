#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include <bergman/kernel_jet.hpp>
#include <bergman/reinhardt.hpp>
#include <bergman/sampling.hpp>

using bergman::kernel::JetOptions;
using bergman::kernel::kernel_jet;
using bergman::kernel::MultiIndex;
using bergman::kernel::ReinhardtDomain;
using Complex = std::complex<double>;
constexpr double kPi = std::numbers::pi;

TEST_CASE("monomial moments have the advertised closed forms") {
  const auto disc = ReinhardtDomain::parse("disc");
  for (int k : {0, 1, 2, 7}) {
    CHECK(disc.moment({k}) == doctest::Approx(kPi / (k + 1)).epsilon(1e-15));
  }
  const auto ball = ReinhardtDomain::parse("ball:2");
  // ||z^alpha||^2 on the unit ball B_k: pi^k alpha! / (k + |alpha|)!
  CHECK(ball.moment({0, 0}) == doctest::Approx(kPi * kPi / 2.0).epsilon(1e-15));
  CHECK(ball.moment({1, 0}) == doctest::Approx(kPi * kPi / 6.0).epsilon(1e-15));
  CHECK(ball.moment({2, 1}) == doctest::Approx(kPi * kPi * 2.0 / 120.0).epsilon(1e-15));
  const auto poly = ReinhardtDomain::parse("polydisc:2");
  CHECK(poly.moment({1, 3}) == doctest::Approx((kPi / 2) * (kPi / 4)).epsilon(1e-15));
  // scaling multiplies the moment by lambda^(2 alpha_i + 2) per coordinate
  const auto scaled = ReinhardtDomain::parse("scale:0.5:disc");
  CHECK(scaled.moment({1}) == doctest::Approx((kPi / 2) * std::pow(0.5, 4)).epsilon(1e-14));
  const auto aniso = ReinhardtDomain::parse("anisoscale:2,0.5:polydisc:2");
  CHECK(aniso.moment({0, 1}) ==
        doctest::Approx(kPi * 4.0 * (kPi / 2) * std::pow(0.5, 4)).epsilon(1e-14));
}

TEST_CASE("egg moments match the beta function closed form") {
  // On {|z1|^2 + |z2|^(2m) < 1}:
  //   N_(a,b) = 4 pi^2 / (2a + 2) * Integral rho^(2b+1) (1 - rho^(2m))^(a+1) drho
  // and the integral is B((b+1)/m, a+2) / (2m).
  for (int m : {2, 3}) {
    const auto egg = ReinhardtDomain::parse("egg:" + std::to_string(m));
    for (int a : {0, 1, 3}) {
      for (int b : {0, 2, 5}) {
        const double beta = std::exp(std::lgamma((b + 1.0) / m) + std::lgamma(a + 2.0) -
                                     std::lgamma((b + 1.0) / m + a + 2.0));
        const double oracle = 4.0 * kPi * kPi / (2.0 * a + 2.0) * beta / (2.0 * m);
        CHECK(egg.moment({a, b}) == doctest::Approx(oracle).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("disc kernel matches the closed form off the origin") {
  const auto disc = ReinhardtDomain::parse("disc");
  for (double x : {0.0, 0.2, 0.45, 0.6}) {
    Eigen::VectorXcd z(1);
    z << Complex(x, 0.1);
    const double closed = 1.0 / (kPi * std::pow(1.0 - std::norm(z[0]), 2));
    CHECK(bergman::kernel::kernel_value(disc, z, 80) ==
          doctest::Approx(closed).epsilon(1e-10));
  }
}

TEST_CASE("truncation converges: doubling T changes nothing measurable") {
  const auto dom = ReinhardtDomain::parse("prod:disc,egg:2");
  Eigen::VectorXcd z(3);
  z << Complex(0.3, 0.1), Complex(0.25, -0.2), Complex(0.1, 0.15);
  const double k40 = bergman::kernel::kernel_value(dom, z, 40);
  const double k80 = bergman::kernel::kernel_value(dom, z, 80);
  CHECK(std::fabs(k40 - k80) / k80 < 1e-8);
  Eigen::VectorXcd xi = Eigen::VectorXcd::Ones(3);
  CHECK(std::fabs(bergman::kernel::curvature_value(dom, z, xi, 40) -
                  bergman::kernel::curvature_value(dom, z, xi, 80)) < 1e-7);
}

TEST_CASE("metric is hermitian positive definite at random points") {
  const auto dom = ReinhardtDomain::parse("prod:disc,ball:2");
  bergman::sampling::HaltonSequence seq(6, 17);
  for (int i = 0; i < 12; ++i) {
    const auto u = seq.next();
    Eigen::VectorXcd z(3);
    for (int j = 0; j < 3; ++j) {
      z[j] = Complex(u[2 * j] - 0.5, u[2 * j + 1] - 0.5) * 0.6;
    }
    const auto jet = kernel_jet(dom, z);
    CHECK(jet.min_metric_eigenvalue > 0.0);
    CHECK((jet.metric - jet.metric.adjoint()).norm() < 1e-10 * jet.metric.norm());
    CHECK(jet.tail_relative < 1e-9);
  }
}

TEST_CASE("curvature tensor has the kaehler symmetry") {
  const auto dom = ReinhardtDomain::parse("prod:disc,disc");
  Eigen::VectorXcd z(2);
  z << Complex(0.3, -0.1), Complex(0.2, 0.25);
  const auto jet = kernel_jet(dom, z);
  const int d = 2;
  auto R = [&](int h, int j, int k, int l) {
    return jet.curvature_tensor[((h * d + j) * d + k) * d + l];
  };
  double worst = 0.0;
  for (int h = 0; h < d; ++h)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k)
        for (int l = 0; l < d; ++l) {
          // R_{h-bar j k l-bar} = R_{h-bar k j l-bar} = conj(R_{j-bar h l k-bar})
          worst = std::max(worst, std::abs(R(h, j, k, l) - R(h, k, j, l)));
          worst = std::max(worst, std::abs(R(h, j, k, l) - std::conj(R(j, h, l, k))));
        }
  CHECK(worst < 1e-9);
}

TEST_CASE("curvature is scale invariant in the direction") {
  const auto dom = ReinhardtDomain::parse("prod:disc,ball:1");
  Eigen::VectorXcd z(2), xi(2);
  z << Complex(0.2, 0.1), Complex(-0.15, 0.3);
  xi << Complex(0.7, -0.2), Complex(0.4, 0.9);
  const auto jet = kernel_jet(dom, z);
  const double h1 = bergman::kernel::curvature_value(jet, xi);
  const double h2 = bergman::kernel::curvature_value(jet, xi * Complex(3.0, -4.0));
  CHECK(std::fabs(h1 - h2) < 1e-10);
}

TEST_CASE("ball curvature is the constant -2/(n+1)") {
  const auto ball2 = ReinhardtDomain::parse("ball:2");
  bergman::sampling::HaltonSequence seq(8, 23);
  for (int i = 0; i < 8; ++i) {
    const auto u = seq.next();
    Eigen::VectorXcd z(2), xi(2);
    z << Complex(u[0] - 0.5, u[1] - 0.5) * 0.5, Complex(u[2] - 0.5, u[3] - 0.5) * 0.5;
    xi << Complex(u[4] - 0.5, u[5] - 0.5), Complex(u[6] - 0.5, u[7] - 0.5);
    CHECK(bergman::kernel::curvature_value(ball2, z, xi) ==
          doctest::Approx(-2.0 / 3.0).epsilon(1e-8));
  }
  const auto disc = ReinhardtDomain::parse("disc");
  Eigen::VectorXcd z(1), xi(1);
  z << Complex(0.4, -0.2);
  xi << Complex(1.0, 0.0);
  CHECK(bergman::kernel::curvature_value(disc, z, xi, 90) ==
        doctest::Approx(-1.0).epsilon(1e-8));
}

TEST_CASE("uncertifiable tails are refused, not silently truncated") {
  const auto disc = ReinhardtDomain::parse("disc");
  Eigen::VectorXcd z(1);
  z << Complex(0.999, 0.0);
  JetOptions opt;
  opt.truncation = 20;
  CHECK_THROWS_AS(kernel_jet(disc, z, opt), std::domain_error);
}
