#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include <bergman/extremal.hpp>
#include <bergman/kernel_jet.hpp>
#include <bergman/sampling.hpp>

using namespace bergman::kernel;
using Complex = std::complex<double>;
constexpr double kPi = std::numbers::pi;

TEST_CASE("least norm integrals at the product origin have closed forms") {
  const auto dom = ReinhardtDomain::parse("prod:disc,ball:1");
  Eigen::VectorXcd z = Eigen::VectorXcd::Zero(2);
  Eigen::VectorXcd e1 = Eigen::VectorXcd::Unit(2, 0);
  // I0 = N_(0,0) = pi^2; I1 = N_(1,0) = (pi/2) pi; I2 = N_(2,0)/4 = (pi/3) pi / 4
  const auto i0 = extremal(dom, z, e1, 0);
  const auto i1 = extremal(dom, z, e1, 1);
  const auto i2 = extremal(dom, z, e1, 2);
  CHECK(i0.value == doctest::Approx(kPi * kPi).epsilon(1e-12));
  CHECK(i1.value == doctest::Approx(kPi * kPi / 2).epsilon(1e-12));
  CHECK(i2.value == doctest::Approx(kPi * kPi / 12).epsilon(1e-12));
  for (const auto* r : {&i0, &i1, &i2}) {
    CHECK(r->constraint_residual < 1e-10);
  }
  // tangential direction picks up the ball moment instead
  Eigen::VectorXcd e2 = Eigen::VectorXcd::Unit(2, 1);
  // N_(0,1) = pi * pi 1!/(1+1)! = pi^2/2
  CHECK(extremal(dom, z, e2, 1).value == doctest::Approx(kPi * kPi / 2).epsilon(1e-12));
}

TEST_CASE("extremal values are non increasing in the truncation degree") {
  const auto dom = ReinhardtDomain::parse("prod:disc,egg:2");
  Eigen::VectorXcd z(3), xi(3);
  z << Complex(0.3, 0.1), Complex(0.2, -0.1), Complex(-0.1, 0.2);
  xi << Complex(1.0, 0.5), Complex(-0.3, 0.2), Complex(0.4, 0.0);
  for (int order : {0, 1, 2}) {
    double prev = std::numeric_limits<double>::infinity();
    for (int T : {20, 30, 40, 60}) {
      const double v = extremal(dom, z, xi, order, T).value;
      CHECK(v <= prev * (1.0 + 1e-12));
      prev = v;
    }
  }
}

TEST_CASE("reciprocity identities hold at random interior points") {
  for (const char* spec : {"polydisc:2", "egg:2", "prod:disc,ball:1"}) {
    const auto dom = ReinhardtDomain::parse(spec);
    bergman::sampling::HaltonSequence seq(4 * dom.dim(), 31);
    for (int i = 0; i < 6; ++i) {
      const auto u = seq.next();
      Eigen::VectorXcd z(dom.dim()), xi(dom.dim());
      for (int j = 0; j < dom.dim(); ++j) {
        z[j] = Complex(u[2 * j] - 0.5, u[2 * j + 1] - 0.5) * 0.55;
        xi[j] = Complex(u[2 * dom.dim() + 2 * j] - 0.5, u[2 * dom.dim() + 2 * j + 1] - 0.5);
      }
      const auto res = fuchs_check(dom, z, xi);
      CHECK(res.kernel < 1e-8);
      CHECK(res.metric < 1e-8);
      CHECK(res.curvature < 1e-7);
    }
  }
}

TEST_CASE("transformation rule under dilations unitaries and disc automorphisms") {
  Eigen::VectorXcd z(2), xi(2);
  z << Complex(0.2, 0.1), Complex(-0.1, 0.3);
  xi << Complex(0.6, -0.1), Complex(0.2, 0.8);

  // dilation from the scaled domain back to the unit one
  const auto d2 = ReinhardtDomain::parse("prod:disc,disc");
  const auto d1 = ReinhardtDomain::parse("scale:0.5:prod:disc,disc");
  const auto dil = Biholomorphism::dilation({2.0, 2.0});
  CHECK(transform_check(dil, d1, d2, z * 0.5, xi).max() < 1e-10);

  // unitary rotation of the ball
  const auto ball = ReinhardtDomain::parse("ball:2");
  Eigen::MatrixXcd U(2, 2);
  const double th = 0.7;
  U << std::cos(th), -std::sin(th), std::sin(th), std::cos(th);
  CHECK(transform_check(Biholomorphism::unitary(U), ball, ball, z, xi).max() < 1e-10);

  // moebius automorphism of the first disc factor
  const auto prod = ReinhardtDomain::parse("prod:disc,ball:1");
  const auto moeb = Biholomorphism::disc_automorphism(Complex(0.45, -0.2), 2);
  CHECK(transform_check(moeb, prod, prod, z, xi).max() < 1e-8);
}

TEST_CASE("extremal integrals are monotone under domain inclusion") {
  Eigen::VectorXcd z(1), xi(1);
  z << Complex(0.2, -0.1);
  xi << Complex(1.0, 0.0);
  const auto sub = ReinhardtDomain::parse("scale:0.9:disc");
  const auto sup = ReinhardtDomain::parse("disc");
  const auto mono = monotonicity_check(sub, sup, z, xi);
  CHECK(mono.all());
  // at the origin the ratio of the I0 values is the volume ratio 0.9^2...
  Eigen::VectorXcd origin = Eigen::VectorXcd::Zero(1);
  const double r = extremal(sub, origin, xi, 0).value / extremal(sup, origin, xi, 0).value;
  CHECK(r == doctest::Approx(0.81).epsilon(1e-12));
  // ...and the order-1 value picks up two more powers of the scale
  const double r1 = extremal(sub, origin, xi, 1).value / extremal(sup, origin, xi, 1).value;
  CHECK(r1 == doctest::Approx(std::pow(0.9, 4)).epsilon(1e-12));
}

TEST_CASE("reciprocity ties the extremal values to the kernel jet") {
  // I0 = 1/kappa directly, as a cross check between the two code paths
  const auto dom = ReinhardtDomain::parse("egg:3");
  Eigen::VectorXcd z(2), xi(2);
  z << Complex(0.25, 0.15), Complex(0.3, -0.2);
  xi << Complex(0.5, 0.5), Complex(-0.2, 0.1);
  const double kappa = kernel_value(dom, z);
  const double i0 = extremal(dom, z, xi, 0).value;
  CHECK(kappa * i0 == doctest::Approx(1.0).epsilon(1e-10));
}
