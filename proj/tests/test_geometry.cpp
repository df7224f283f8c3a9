#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>

#include <bergman/geometry.hpp>
#include <bergman/sampling.hpp>

using namespace bergman::geometry;
using bergman::FlatProfile;
using bergman::LogScalar;

namespace {

ModelDomain harness_domain(int n = 1, int m = 1, double delta0 = 4.0) {
  ModelDomain d;
  d.n = n;
  d.profile = FlatProfile(m);
  d.delta0 = delta0;
  return d;
}

const char* kTiltedStream =
    R"({"kind":"tilted","alpha":1.0,"N":4,"a":1.0,"c":1.0,"Nprime":6,"u":[1.0]})";

}  // namespace

TEST_CASE("defining function sign") {
  const auto dom = harness_domain();
  Vector inside(2), outside(2);
  inside << std::complex<double>(-0.2, 0.3), std::complex<double>(0.1, 0.0);
  outside << std::complex<double>(0.1, 0.0), std::complex<double>(0.0, 0.0);
  CHECK(rho_eval(dom, inside).sign() < 0);
  CHECK(rho_eval(dom, outside).sign() > 0);
}

TEST_CASE("cone membership") {
  Vector z(2);
  z << std::complex<double>(-0.1, 0.0), std::complex<double>(0.2, 0.0);
  CHECK(cone_member(1.0, 4.0, z));       // 0.1 > 0.2^4
  CHECK(!cone_member(1.0, 1.0, z));      // 0.1 < 0.2
  const auto tilted = ConeStream::parse(kTiltedStream, 1);
  // r(t) = t^(1/6) eventually dominates alpha-free t, but t < t^(4/6)
  // for small t, so the tilted stream leaves the alpha=1, N=4 cone
  CHECK(!tilted.cone_member_at(-300.0));
  ConeStream normal;
  CHECK(normal.cone_member_at(-300.0));
}

TEST_CASE("slice normalization and block unateries") {
  Vector q(3);
  q << std::complex<double>(-0.3, 0.0), std::complex<double>(0.1, 0.2),
      std::complex<double>(-0.05, 0.04);
  const auto sn = slice_normalize(q);
  CHECK((sn.R1 * sn.R1.adjoint() - Matrix::Identity(3, 3)).norm() < 1e-14);
  const Vector image = sn.R1 * q;
  CHECK((image - sn.q_tilde).norm() < 1e-14);
  CHECK(sn.q_tilde[0].real() == doctest::Approx(-0.3));
  CHECK(std::abs(sn.q_tilde[1]) ==
        doctest::Approx(std::sqrt(std::norm(q[1]) + std::norm(q[2]))));
  CHECK(std::abs(sn.q_tilde[2]) < 1e-15);
  CHECK(std::abs(sn.q_tilde[1].imag()) < 1e-15);

  Vector dir(2);
  dir << std::complex<double>(0.6, -0.3), std::complex<double>(0.1, 0.9);
  dir.normalize();
  const Matrix U = block_unitary_from_direction(dir, 2);
  CHECK((U * U.adjoint() - Matrix::Identity(3, 3)).norm() < 1e-14);
  Vector lifted(3);
  lifted << 0.0, dir[0], dir[1];
  const Vector e2 = U * lifted;
  CHECK(std::abs(e2[1] - 1.0) < 1e-14);
  CHECK(std::abs(e2[0]) < 1e-15);
  CHECK(std::abs(e2[2]) < 1e-14);
}

TEST_CASE("foot point matches a brute force nearest boundary point") {
  const auto dom = harness_domain();
  const auto foot = foot_point(dom, LogScalar::from_value(-0.01), 0.05);

  // oracle: minimize |qt - p|^2 over boundary points p = (-phi(s^2), s)
  auto dist2 = [&](double s) {
    const double p1 = -dom.profile.eval(s * s).to_value_clamped();
    const double dx = -0.01 - p1;
    const double dy = 0.05 - s;
    return dx * dx + dy * dy;
  };
  double best = 0.0, best_val = dist2(0.0);
  for (int i = 1; i <= 400000; ++i) {
    const double s = 0.05 + 0.10 * (i / 400000.0 - 0.5);
    const double v = dist2(s);
    if (v < best_val) {
      best_val = v;
      best = s;
    }
  }
  CHECK(foot.p2 == doctest::Approx(best).epsilon(1e-5));
  CHECK(foot.d.to_value().value() == doctest::Approx(std::sqrt(best_val)).epsilon(1e-5));
  // the returned residuals certify the fixed point much more tightly
  CHECK(foot.residual_p1.abs().to_value_clamped() < 1e-12);
  CHECK(foot.residual_p2.abs().to_value_clamped() < 1e-12);
  // A = |grad rho| >= 1 with the tangential gradient term
  CHECK(foot.A >= 1.0);
}

TEST_CASE("normal stream boundary scales have closed forms") {
  const auto dom = harness_domain();  // m = 1
  ConeStream normal;
  const auto frame = make_frame(dom, normal, -100.0);
  // q = (-t, 0): foot p = 0, d = t, and t = phi(dstar^2) gives dstar = 0.1
  CHECK(frame.foot.p2 == 0.0);
  CHECK(frame.d().log_magnitude() == doctest::Approx(-100.0).epsilon(1e-14));
  CHECK(frame.dstar == doctest::Approx(0.1).epsilon(1e-12));

  // d1: t^(1/(1+eps)) = phi(s^2); eps = 1 gives s = sqrt(1/50)
  bool clamped = false;
  const double d1 = d_eps(dom, frame.foot, 1.0, 1, &clamped);
  CHECK(!clamped);
  CHECK(d1 == doctest::Approx(std::sqrt(0.02)).epsilon(1e-12));
  // d2: t^(1/(1+eps)^2) = phi(s^2); eps = 1 gives s = sqrt(1/25) = 0.2
  const double d2 = d_eps(dom, frame.foot, 1.0, 2, &clamped);
  CHECK(!clamped);
  CHECK(d2 == doctest::Approx(0.2).epsilon(1e-12));
  CHECK(frame.dstar / d2 == doctest::Approx(0.5).epsilon(1e-12));
  // ordering dstar < d1 < d2 holds throughout
  CHECK(frame.dstar < d1);
  CHECK(d1 < d2);
}

TEST_CASE("d_eps clamps at the neighborhood radius") {
  const auto dom = harness_domain(1, 1, 0.1);  // w radius 0.01
  ConeStream normal;
  const auto frame = make_frame(dom, normal, -100.0);
  bool clamped = false;
  const double d2 = d_eps(dom, frame.foot, 1.0, 2, &clamped);
  CHECK(clamped);
  CHECK(d2 == doctest::Approx(0.01));
}

TEST_CASE("frame rotations are unitary and gamma inverts") {
  const auto dom = harness_domain();
  const auto tilted = ConeStream::parse(kTiltedStream, 1);
  // moderate t so that plain-point transport stays in double range
  const auto frame = make_frame(dom, tilted, -30.0);
  CHECK((frame.R2() * frame.R2().adjoint() - Matrix::Identity(2, 2)).norm() < 1e-14);
  CHECK((frame.rotation() * frame.rotation().adjoint() - Matrix::Identity(2, 2)).norm() <
        1e-14);
  bergman::sampling::HaltonSequence seq(4, 3);
  for (int i = 0; i < 25; ++i) {
    const auto u = seq.next();
    Vector w(2);
    w << std::complex<double>(u[0] - 0.5, u[1] - 0.5),
        std::complex<double>(u[2] - 0.5, u[3] - 0.5);
    w *= 0.01;
    const Vector back = gamma_inverse(frame, gamma_apply(frame, w));
    CHECK((back - w).norm() < 1e-12);
  }
}

TEST_CASE("sigma and the cayley map expand by the advertised diagonal") {
  const auto dom = harness_domain();
  ConeStream normal;
  const auto frame = make_frame(dom, normal, -30.0);
  const auto diag = sigma_cayley_derivative(frame);
  REQUIRE(diag.size() == 2);
  CHECK(diag[0].log_magnitude() ==
        doctest::Approx((-frame.d() * LogScalar::from_value(2.0)).pow(-1.0).abs().log_magnitude())
            .epsilon(1e-12));
  CHECK(diag[1].to_value().value() == doctest::Approx(1.0 / frame.dstar).epsilon(1e-12));
  // the frame center maps to the disc center (0, 0)
  Vector center(2);
  center << std::complex<double>(-frame.d().to_value().value(), 0.0), 0.0;
  const Vector image = sigma_cayley(frame, center);
  CHECK(image.norm() < 1e-12);
}

TEST_CASE("regions are nested") {
  const auto dom = harness_domain();
  const auto tilted = ConeStream::parse(kTiltedStream, 1);
  const auto frame = make_frame(dom, tilted, -200.0);
  const auto spec = make_region(frame, 0.5);
  bergman::sampling::HaltonSequence seq(4, 5);
  int counted[4] = {0, 0, 0, 0};
  for (int i = 0; i < 4000; ++i) {
    const auto u = seq.next();
    FramePoint z;
    // |Re z1| log-uniform across all the scales down to d(t) itself, with
    // the imaginary part no larger than the real part (small aperture)
    z.re1 = LogScalar::from_log(-1, frame.d().log_magnitude() * u[0]);
    z.im1 = LogScalar::from_log(u[1] > 0.5 ? 1 : -1,
                                z.re1.log_magnitude() + std::log(std::abs(2 * u[1] - 1) + 1e-9));
    z.zp = Vector(1);
    z.zp[0] = std::polar(0.2 * u[2], 6.28318530717958648 * u[3]);
    const bool in_w = region_member(frame, spec, z, Region::kW);
    const bool in_v = region_member(frame, spec, z, Region::kVt);
    const bool in_d = region_member(frame, spec, z, Region::kDte);
    const bool in_dt = region_member(frame, spec, z, Region::kDteTilde);
    if (in_dt) CHECK(in_d);
    if (in_d) CHECK(in_v);
    if (in_v) CHECK(in_w);
    counted[0] += in_w;
    counted[1] += in_v;
    counted[2] += in_d;
    counted[3] += in_dt;
  }
  // the sampler must actually exercise every region
  CHECK(counted[3] > 0);
  CHECK(counted[0] > counted[3]);
}

TEST_CASE("h_eps weight is scale free in the log field") {
  // log|h_eps| = -Re[(-z1)^(1/(1+eps))]; check against plain arithmetic
  const double eps = 0.5;
  const std::complex<double> z1(-0.3, 0.2);
  const std::complex<double> w = std::pow(-z1, 1.0 / (1.0 + eps));
  const auto got = log_abs_h_eps(eps, LogScalar::from_value(z1.real()),
                                 LogScalar::from_value(z1.imag()));
  CHECK(got.to_value().value() == doctest::Approx(-w.real()).epsilon(1e-13));
  CHECK_THROWS(log_abs_h_eps(eps, LogScalar::from_value(0.1), LogScalar::zero()));
  // exponentially small first coordinate: the magnitude comes out finite
  const auto deep = log_abs_h_eps(1.0, LogScalar::from_log(-1, -5000.0), LogScalar::zero());
  CHECK(deep.sign() == -1);
  CHECK(deep.log_magnitude() == doctest::Approx(-2500.0).epsilon(1e-12));
}

TEST_CASE("tangent split is orthogonal and exhaustive") {
  const auto dom = harness_domain();
  const auto tilted = ConeStream::parse(kTiltedStream, 1);
  const auto frame = make_frame(dom, tilted, -150.0);
  Vector xi(2);
  xi << std::complex<double>(0.3, -0.4), std::complex<double>(0.8, 0.1);
  const auto split = tangent_split(frame, xi);
  CHECK((split.xi_normal + split.xi_tangent - xi).norm() < 1e-13);
  CHECK(std::abs(split.xi_normal.dot(split.xi_tangent)) < 1e-13);
  CHECK(split.norm_normal * split.norm_normal + split.norm_tangent * split.norm_tangent ==
        doctest::Approx(xi.squaredNorm()).epsilon(1e-13));
  CHECK(split.model_coords.norm() == doctest::Approx(xi.norm()).epsilon(1e-13));
}

TEST_CASE("sandwich inclusions hold on both streams") {
  const auto dom = harness_domain();
  const ConeStream normal;
  const auto tilted = ConeStream::parse(kTiltedStream, 1);
  for (const ConeStream* stream : {&normal, &tilted}) {
    const auto frame = make_frame(dom, *stream, -500.0);
    const auto rep = sandwich_check(frame, 0.5, 0.1, 800, 42);
    CHECK(rep.violations_in == 0);
    CHECK(rep.violations_out == 0);
    CHECK(!rep.starved);
    CHECK(rep.samples_in == 800);
    CHECK(rep.samples_out == 800);
  }
}

TEST_CASE("t grids are geometric in log t") {
  const auto grid = TGrid::parse(R"({"log_t_start":-50,"log_t_end":-2000,"points":40})");
  const auto values = grid.log_t_values();
  REQUIRE(values.size() == 40);
  CHECK(values.front() == doctest::Approx(-50.0));
  CHECK(values.back() == doctest::Approx(-2000.0));
  const double ratio = values[1] / values[0];
  for (std::size_t i = 1; i + 1 < values.size(); ++i) {
    CHECK(values[i + 1] / values[i] == doctest::Approx(ratio).epsilon(1e-10));
  }
  const auto log10_grid = TGrid::parse(R"({"log10_t_start":-50,"log10_t_end":-100,"points":3})");
  CHECK(log10_grid.log_t_values().front() == doctest::Approx(-50.0 * std::log(10.0)));
}
