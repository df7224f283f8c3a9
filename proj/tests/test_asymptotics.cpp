#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include <bergman/asymptotics.hpp>
#include <bergman/report.hpp>

using namespace bergman::asymptotics;
using bergman::FlatProfile;
using bergman::LogScalar;
using bergman::geometry::ConeStream;
using bergman::geometry::ModelDomain;
using bergman::geometry::TGrid;

namespace {

ModelDomain harness_domain() {
  ModelDomain d;
  d.n = 1;
  d.profile = FlatProfile(1);
  d.delta0 = 4.0;
  return d;
}

TGrid short_grid(double from = -100.0, double to = -1000.0, int points = 8) {
  TGrid g;
  g.log_t_start = from;
  g.log_t_end = to;
  g.points = points;
  return g;
}

const char* kTiltedStream =
    R"({"kind":"tilted","alpha":1.0,"N":4,"a":1.0,"c":1.0,"Nprime":6,"u":[1.0]})";

}  // namespace

TEST_CASE("normal stream scale ratios are exact") {
  // q = (-t, 0) with m = 1: d = t, d* = |log t|^(-1/2), and
  // d*/d1 = (1+eps)^(-1/2), d*/d2 = (1+eps)^(-1) with no error term.
  const auto table = limit_series(harness_domain(), ConeStream{}, short_grid(),
                                    {1.0, 0.5, 0.25});
  REQUIRE(table.rows.size() == 8);
  for (const auto& row : table.rows) {
    const double L = -row.log_t;
    CHECK(row.phi_over_d.log_magnitude() < -1e40);  // phi(d^2)/d is doubly small
    CHECK((row.d_over_dstar.log_magnitude() - (-L + 0.5 * std::log(L))) /
              std::fabs(row.log_t) ==
          doctest::Approx(0.0).epsilon(1e-12));
    for (std::size_t i = 0; i < table.eps_list.size(); ++i) {
      const double eps = table.eps_list[i];
      CHECK(row.dstar_over_d1[i] ==
            doctest::Approx(std::pow(1.0 + eps, -0.5)).epsilon(1e-12));
      CHECK(row.dstar_over_d2[i] == doctest::Approx(1.0 / (1.0 + eps)).epsilon(1e-12));
    }
    CHECK(row.cone_ok);
  }
  CHECK(table.below_threshold_from(1e-6) <= -100.0);
  CHECK(table.monotone_tail_from(-100.0));
}

TEST_CASE("tilted stream ratios approach the same limits from below") {
  const auto stream = ConeStream::parse(kTiltedStream, 1);
  const auto table =
      limit_series(harness_domain(), stream, short_grid(-100, -4000, 10), {1.0});
  const auto& rows = table.rows;
  for (std::size_t i = 0; i + 1 < rows.size(); ++i) {
    CHECK(rows[i].dstar_over_d1[0] <= rows[i + 1].dstar_over_d1[0] + 1e-13);
    // below or at the limit (the deep tail reaches it to double precision)
    CHECK(rows[i].dstar_over_d1[0] <= std::pow(2.0, -0.5) + 1e-13);
  }
  CHECK(rows.back().dstar_over_d1[0] == doctest::Approx(std::pow(2.0, -0.5)).epsilon(1e-3));
  // r/p2 tends to 1 on a genuinely tilted stream
  CHECK(rows.back().r_over_p2 == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("kernel brackets obey the closed form width and contain the target") {
  const auto dom = harness_domain();
  RatioOptions opt;
  opt.certify_samples = 300;
  const double eps = 0.5, delta = 0.1;
  const auto series = kernel_ratio_bounds(dom, ConeStream{}, eps, delta, short_grid(), opt);
  CHECK(series.target == doctest::Approx(1.0 / (4.0 * std::pow(std::numbers::pi, 2))));
  CHECK(series.brackets_contain_target());
  CHECK(series.certified_count() > 0);
  const int n = dom.n;
  for (const auto& rec : series.records) {
    if (!rec.certified) continue;
    // upper/lower = (d2/d*)^(2n) / (1-delta)^(2(n+1)) by construction
    const double width = std::pow(rec.d2eps / rec.dstar, 2 * n) /
                         std::pow(1.0 - delta, 2 * (n + 1));
    CHECK(rec.upper / rec.lower == doctest::Approx(width).epsilon(1e-10));
    CHECK(rec.lower <= rec.center);
    CHECK(rec.center <= rec.upper);
  }
}

TEST_CASE("brackets shrink along the certification schedule") {
  const auto dom = harness_domain();
  RatioOptions opt;
  opt.certify_samples = 300;
  const auto grid = short_grid(-400, -1200, 4);
  double prev_width = std::numeric_limits<double>::infinity();
  for (const auto& [eps, delta] : default_schedule()) {
    const auto series = kernel_ratio_bounds(dom, ConeStream{}, eps, delta, grid, opt);
    const auto& rec = series.records.back();
    if (!rec.certified) continue;
    const double width = rec.upper / rec.lower;
    CHECK(width < prev_width);
    prev_width = width;
    CHECK(rec.lower <= series.target);
    CHECK(series.target <= rec.upper);
  }
  CHECK(prev_width < 1.6);
}

TEST_CASE("metric and curvature brackets contain their targets") {
  const auto dom = harness_domain();
  const auto grid = short_grid(-600, -1200, 3);
  RatioOptions opt;
  opt.certify_samples = 200;
  Eigen::VectorXcd e1 = Eigen::VectorXcd::Unit(2, 0);
  Eigen::VectorXcd e2 = Eigen::VectorXcd::Unit(2, 1);
  Eigen::VectorXcd mixed(2);
  mixed << std::complex<double>(0.8, 0.3), std::complex<double>(-0.2, 0.6);
  for (const auto& xi : {e1, e2, mixed}) {
    const auto bm = metric_ratio_bounds(dom, ConeStream{}, xi, 0.1, 0.01, grid, opt);
    CHECK(bm.target == doctest::Approx(1.0));
    CHECK(bm.brackets_contain_target());
    CHECK(bm.certified_count() > 0);
    const auto bc = curvature_ratio_bounds(dom, ConeStream{}, xi, 0.1, 0.01, grid, opt);
    CHECK(bc.target == doctest::Approx(-2.0));
    CHECK(bc.brackets_contain_target());
    CHECK(bc.certified_count() > 0);
  }
}

TEST_CASE("two scale counterexample: constant ratio, dichotomy off sqrt 2") {
  const auto rep = counterexample(short_grid(-100, -3000, 12),
                                  {0.5, 1.0, 1.2, 1.4, 1.45, 1.6, 2.0});
  CHECK(rep.max_ratio_deviation() < 1e-12);
  for (std::size_t ti = 0; ti < rep.log_t.size(); ++ti) {
    const auto& q = rep.quotient[ti];
    // strictly increasing in |u2|
    for (std::size_t j = 0; j + 1 < q.size(); ++j) {
      CHECK(q[j] < q[j + 1]);
    }
    // the switch sits between 1.4 and 1.45, not at 1
    CHECK(q[3] < LogScalar::one());
    CHECK(LogScalar::one() < q[4]);
    CHECK(q[1].log_magnitude() < -40.0);  // |u2| = 1 already vanishes
  }
  // along the stream: vanishing below sqrt(2), divergence above
  for (std::size_t ti = 0; ti + 1 < rep.log_t.size(); ++ti) {
    CHECK(rep.quotient[ti + 1][2] < rep.quotient[ti][2]);
    CHECK(rep.quotient[ti][5] < rep.quotient[ti + 1][5]);
  }
}

TEST_CASE("csv reports are deterministic and carry full precision") {
  const auto dom = harness_domain();
  RatioOptions opt;
  opt.certify_samples = 100;
  opt.seed = 99;
  const auto grid = short_grid(-200, -800, 3);
  const auto a = kernel_ratio_bounds(dom, ConeStream{}, 0.5, 0.1, grid, opt);
  const auto b = kernel_ratio_bounds(dom, ConeStream{}, 0.5, 0.1, grid, opt);
  const std::string csv_a = bergman::report::ratio_series_csv(a);
  const std::string csv_b = bergman::report::ratio_series_csv(b);
  CHECK(csv_a == csv_b);
  CHECK(csv_a.find("lower") != std::string::npos);
  // 15 significant digits survive the round trip
  CHECK(bergman::report::format_number(std::numbers::pi) == "3.14159265358979");
  const auto svg = bergman::report::ratio_series_svg(a);
  CHECK(svg.find("<svg") != std::string::npos);
}
