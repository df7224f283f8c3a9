#include "bergman/asymptotics.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "bergman/extremal.hpp"
#include "bergman/kernel_jet.hpp"
#include "bergman/parallel.hpp"

namespace bergman::asymptotics {

namespace {

using geometry::ScalingFrame;
using kernel::ReinhardtDomain;

constexpr double kPi = std::numbers::pi;

ReinhardtDomain model_product(int n, double lambda1, double lambda_prime) {
  std::vector<ReinhardtDomain::Factor> factors;
  factors.push_back({ReinhardtDomain::Factor::Shape::kDisc, 1, 2});
  factors.push_back({ReinhardtDomain::Factor::Shape::kBall, n, 2});
  std::vector<double> scales(n + 1, lambda_prime);
  scales[0] = lambda1;
  return ReinhardtDomain(std::move(factors), std::move(scales));
}

// Scale-invariant model direction: the image of xi under (f.Sigma o
// gamma^-1)' has moduli (|xi_N|/(2d), |xi_T|/d*); only their proportions
// matter for the normalized metric and curvature ratios, so they are
// normalized in the log field before materializing.
struct ModelDirection {
  double x = 0.0;  // normal slot, in [0, 1]
  double y = 0.0;  // tangential slot, in [0, 1], x^2 + y^2 = 1
};

ModelDirection model_direction(const ScalingFrame& frame, const Vector& xi) {
  const auto split = geometry::tangent_split(frame, xi);
  const LogScalar lx = LogScalar::from_value(split.norm_normal) /
                       (LogScalar::from_value(2.0) * frame.d());
  const LogScalar ly =
      LogScalar::from_value(split.norm_tangent) / LogScalar::from_value(frame.dstar);
  const LogScalar hyp = (lx * lx + ly * ly).sqrt();
  if (hyp.is_zero()) throw std::invalid_argument("model_direction: xi must be nonzero");
  ModelDirection dir;
  dir.x = (lx / hyp).to_value_clamped();
  dir.y = (ly / hyp).to_value_clamped();
  return dir;
}

struct BracketInputs {
  ScalingFrame frame;
  geometry::RegionSpec region;
  double R = 0.0;  // d2eps / d*, outer ball radius in model coordinates
  bool certified = false;
};

BracketInputs bracket_inputs(const ModelDomain& domain, const ConeStream& stream,
                             double log_t, double eps, double delta,
                             const RatioOptions& options, std::uint64_t t_index) {
  BracketInputs in;
  in.frame = geometry::make_frame(domain, stream, log_t);
  in.region = geometry::make_region(in.frame, eps);
  in.R = in.region.d2eps / in.frame.dstar;
  if (in.R < 1.0) {
    // the outer inclusion needs d2eps >= d*; below that t is not small enough
    in.certified = false;
    return in;
  }
  bool ok = !in.region.d1_clamped && !in.region.d2_clamped;
  if (ok && options.certify_samples > 0) {
    const auto report = geometry::sandwich_check(in.frame, eps, delta, options.certify_samples,
                                                 options.seed + 0x10001ULL * t_index);
    ok = report.violations_in == 0 && report.violations_out == 0 && !report.starved;
  }
  in.certified = ok;
  return in;
}

void fill_scales(RatioRecord& rec, const BracketInputs& in) {
  rec.d = in.frame.d();
  rec.dstar = in.frame.dstar;
  rec.d1eps = in.region.d1eps;
  rec.d2eps = in.region.d2eps;
  rec.certified = in.certified;
}

}  // namespace

// ---------------------------------------------------------------------------
// Lemma 3.1 style diagnostics

StreamLimitTable limit_series(const ModelDomain& domain, const ConeStream& stream,
                            const TGrid& grid, const std::vector<double>& eps_list, int jobs) {
  StreamLimitTable table;
  table.eps_list = eps_list;
  table.stream_N = stream.N;
  const auto log_ts = grid.log_t_values();
  table.rows.resize(log_ts.size());
  parallel_for(log_ts.size(), jobs, [&](std::size_t i) {
    const double log_t = log_ts[i];
    const auto frame = geometry::make_frame(domain, stream, log_t);
    const auto& foot = frame.foot;
    StreamLimitRow row;
    row.log_t = log_t;
    row.phi_over_d = foot.phi_p2sq / foot.d;
    row.phi_prime_over_d = foot.phi_prime_p2sq / foot.d;
    row.p2_over_dstar = LogScalar::from_value(foot.p2 / frame.dstar);
    row.d_over_dstar = foot.d / LogScalar::from_value(frame.dstar);
    row.d_over_dstar_pow =
        foot.d / LogScalar::from_value(frame.dstar).pow(stream.N + 1.0);
    row.r_over_p2 = foot.p2 > 0.0 ? foot.r / foot.p2 : 1.0;
    row.cone_ok = frame.cone_ok;
    for (double eps : eps_list) {
      row.dstar_over_d1.push_back(frame.dstar / geometry::d_eps(domain, foot, eps, 1));
      row.dstar_over_d2.push_back(frame.dstar / geometry::d_eps(domain, foot, eps, 2));
    }
    table.rows[i] = std::move(row);
  });
  return table;
}

double StreamLimitTable::below_threshold_from(double threshold) const {
  const LogScalar thr = LogScalar::from_value(threshold);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    bool ok = true;
    for (std::size_t j = i; j < rows.size(); ++j) {
      const auto& r = rows[j];
      ok = ok && r.phi_over_d.abs() < thr && r.phi_prime_over_d.abs() < thr &&
           r.p2_over_dstar.abs() < thr && r.d_over_dstar.abs() < thr &&
           r.d_over_dstar_pow.abs() < thr;
      if (!ok) break;
    }
    if (ok) return rows[i].log_t;
  }
  return 1.0;
}

bool StreamLimitTable::monotone_tail_from(double log_t_from) const {
  const StreamLimitRow* prev = nullptr;
  for (const auto& r : rows) {
    if (r.log_t > log_t_from) continue;
    if (prev) {
      if (!(r.phi_over_d.abs() <= prev->phi_over_d.abs() &&
            r.phi_prime_over_d.abs() <= prev->phi_prime_over_d.abs() &&
            r.p2_over_dstar.abs() <= prev->p2_over_dstar.abs() &&
            r.d_over_dstar.abs() <= prev->d_over_dstar.abs() &&
            r.d_over_dstar_pow.abs() <= prev->d_over_dstar_pow.abs())) {
        return false;
      }
    }
    prev = &r;
  }
  return prev != nullptr;
}

double StreamLimitTable::min_ratio_d1(std::size_t eps_index) const {
  double v = rows.empty() ? 0.0 : rows[0].dstar_over_d1[eps_index];
  for (const auto& r : rows) v = std::min(v, r.dstar_over_d1[eps_index]);
  return v;
}

double StreamLimitTable::min_ratio_d2(std::size_t eps_index) const {
  double v = rows.empty() ? 0.0 : rows[0].dstar_over_d2[eps_index];
  for (const auto& r : rows) v = std::min(v, r.dstar_over_d2[eps_index]);
  return v;
}

// ---------------------------------------------------------------------------
// Ratio brackets

bool RatioSeries::brackets_contain_target(double slack) const {
  for (const auto& r : records) {
    if (!r.certified) continue;
    if (!(r.lower <= target + slack && target - slack <= r.upper)) return false;
  }
  return true;
}

int RatioSeries::certified_count() const {
  int c = 0;
  for (const auto& r : records) c += r.certified ? 1 : 0;
  return c;
}

std::vector<std::pair<double, double>> default_schedule() {
  return {{1.0, 0.3}, {0.5, 0.1}, {0.25, 0.03}, {0.1, 0.01}};
}

RatioSeries kernel_ratio_bounds(const ModelDomain& domain, const ConeStream& stream,
                                double eps, double delta, const TGrid& grid,
                                const RatioOptions& options) {
  if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("delta must be in (0,1)");
  const int n = domain.n;
  RatioSeries series;
  series.kind = "kernel";
  series.eps = eps;
  series.delta = delta;
  series.target = std::tgamma(n + 1.0) / (4.0 * std::pow(kPi, n + 1.0));

  const auto log_ts = grid.log_t_values();
  series.records.resize(log_ts.size());
  parallel_for(log_ts.size(), options.jobs, [&](std::size_t i) {
    const auto in = bracket_inputs(domain, stream, log_ts[i], eps, delta, options, i);
    RatioRecord rec;
    rec.log_t = log_ts[i];
    fill_scales(rec, in);
    if (in.R >= 1.0) {
      // kappa is antitone under inclusion: the outer domain gives the
      // lower bound, the shrunken product the upper one.
      const Eigen::VectorXcd zero = Eigen::VectorXcd::Zero(n + 1);
      const double kappa_lower =
          kernel::kernel_value(model_product(n, 1.0, in.R), zero, options.truncation);
      const double kappa_upper = kernel::kernel_value(
          model_product(n, 1.0 - delta, (1.0 - delta) * 1.0), zero, options.truncation);
      rec.lower = kappa_lower / 4.0;
      rec.upper = kappa_upper / 4.0;
      rec.center = std::sqrt(rec.lower * rec.upper);
    } else {
      rec.certified = false;
    }
    series.records[i] = rec;
  });
  return series;
}

namespace {

struct ExtremalBracket {
  double lo[3];  // from the inner (1-delta) product
  double hi[3];  // from the outer anisotropically scaled product
};

ExtremalBracket extremal_bracket(int n, double delta, double R, const ModelDirection& dir,
                                 int T) {
  const Eigen::VectorXcd zero = Eigen::VectorXcd::Zero(n + 1);
  Eigen::VectorXcd eta = Eigen::VectorXcd::Zero(n + 1);
  eta[0] = dir.x;
  eta[1] = dir.y;
  const auto sub = model_product(n, 1.0 - delta, 1.0 - delta);
  const auto sup = model_product(n, 1.0, R);
  ExtremalBracket b;
  for (int j = 0; j < 3; ++j) {
    b.lo[j] = kernel::extremal(sub, zero, eta, j, T).value;
    b.hi[j] = kernel::extremal(sup, zero, eta, j, T).value;
  }
  return b;
}

}  // namespace

RatioSeries metric_ratio_bounds(const ModelDomain& domain, const ConeStream& stream,
                                const Vector& xi, double eps, double delta, const TGrid& grid,
                                const RatioOptions& options) {
  const int n = domain.n;
  RatioSeries series;
  series.kind = "metric";
  series.eps = eps;
  series.delta = delta;
  series.target = 1.0;
  const auto log_ts = grid.log_t_values();
  series.records.resize(log_ts.size());
  parallel_for(log_ts.size(), options.jobs, [&](std::size_t i) {
    const auto in = bracket_inputs(domain, stream, log_ts[i], eps, delta, options, i);
    RatioRecord rec;
    rec.log_t = log_ts[i];
    fill_scales(rec, in);
    if (in.R >= 1.0) {
      const auto dir = model_direction(in.frame, xi);
      const auto b = extremal_bracket(n, delta, in.R, dir, options.truncation);
      // B^2 = I0/I1; both I0 and I1 are monotone under inclusion.
      const double denom =
          std::sqrt(2.0 * dir.x * dir.x + (n + 1.0) * dir.y * dir.y);
      rec.lower = std::sqrt(b.lo[0] / b.hi[1]) / denom;
      rec.upper = std::sqrt(b.hi[0] / b.lo[1]) / denom;
      rec.center = std::sqrt(rec.lower * rec.upper);
    } else {
      rec.certified = false;
    }
    series.records[i] = rec;
  });
  return series;
}

RatioSeries curvature_ratio_bounds(const ModelDomain& domain, const ConeStream& stream,
                                   const Vector& xi, double eps, double delta,
                                   const TGrid& grid, const RatioOptions& options) {
  const int n = domain.n;
  RatioSeries series;
  series.kind = "curvature";
  series.eps = eps;
  series.delta = delta;
  series.target = -2.0;
  const auto log_ts = grid.log_t_values();
  series.records.resize(log_ts.size());
  parallel_for(log_ts.size(), options.jobs, [&](std::size_t i) {
    const auto in = bracket_inputs(domain, stream, log_ts[i], eps, delta, options, i);
    RatioRecord rec;
    rec.log_t = log_ts[i];
    fill_scales(rec, in);
    if (in.R >= 1.0) {
      const auto dir = model_direction(in.frame, xi);
      const auto b = extremal_bracket(n, delta, in.R, dir, options.truncation);
      // H = 2 - I1^2/(I0 I2) bracketed by interval monotonicity.
      const double h_lower = 2.0 - b.hi[1] * b.hi[1] / (b.lo[0] * b.lo[2]);
      const double h_upper = 2.0 - b.lo[1] * b.lo[1] / (b.hi[0] * b.hi[2]);
      const double q2 = 2.0 * dir.x * dir.x + (n + 1.0) * dir.y * dir.y;
      const double phi = (2.0 * std::pow(dir.x, 4) + (n + 1.0) * std::pow(dir.y, 4)) /
                         (q2 * q2);
      rec.lower = h_lower / phi;
      rec.upper = h_upper / phi;
      rec.center = -std::sqrt(rec.lower * rec.upper);  // both bounds negative in range
    } else {
      rec.certified = false;
    }
    series.records[i] = rec;
  });
  return series;
}

// ---------------------------------------------------------------------------
// Two-scale counterexample (m = 1)

CounterexampleReport counterexample(const TGrid& grid, const std::vector<double>& u2_grid) {
  const FlatProfile phi(1);
  CounterexampleReport rep;
  rep.u2 = u2_grid;
  for (double log_t : grid.log_t_values()) {
    const LogScalar t = LogScalar::from_log(log_t);
    // -t + phi(d*^2) = 0 and -sqrt(t) + phi(d1^2) = 0
    const double dstar = std::sqrt(phi.inverse(t));
    const double d1 = std::sqrt(phi.inverse(t.pow(0.5)));
    rep.log_t.push_back(log_t);
    rep.dstar.push_back(dstar);
    rep.d1.push_back(d1);
    rep.ratio.push_back(d1 / dstar);
    std::vector<LogScalar> row;
    for (double u : u2_grid) {
      const LogScalar num = phi.eval(dstar * u * dstar * u);
      const LogScalar den = phi.eval(dstar * dstar).pow(0.5);
      row.push_back(num / den);
    }
    rep.quotient.push_back(std::move(row));
  }
  return rep;
}

double CounterexampleReport::max_ratio_deviation() const {
  double dev = 0.0;
  for (double r : ratio) dev = std::max(dev, std::fabs(r - std::numbers::sqrt2));
  return dev;
}

}  // namespace bergman::asymptotics
