#include "bergman/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <stdexcept>

#include <json.hpp>

#include "bergman/rootfind.hpp"
#include "bergman/sampling.hpp"

namespace bergman::geometry {

using nlohmann::json;

LogScalar rho_eval(const ModelDomain& domain, const Vector& z) {
  if (z.size() != domain.ambient_dim()) throw std::invalid_argument("rho_eval: wrong dimension");
  double s = 0.0;
  for (int j = 1; j < z.size(); ++j) s += std::norm(z[j]);
  return LogScalar::from_value(z[0].real()) + domain.profile.eval(s);
}

bool cone_member(double alpha, double N, const Vector& z) {
  if (alpha <= 0 || N <= 0) throw std::invalid_argument("cone_member: alpha, N must be > 0");
  double s = 0.0;
  for (int j = 1; j < z.size(); ++j) s += std::norm(z[j]);
  return z[0].real() < -alpha * std::pow(std::sqrt(s), N);
}

// ---------------------------------------------------------------------------
// Streams

ConeStream ConeStream::parse(const std::string& json_text, int n) {
  const json j = json::parse(json_text);
  ConeStream s;
  s.alpha = j.value("alpha", 1.0);
  s.N = j.value("N", 4.0);
  const std::string kind = j.value("kind", "normal");
  if (kind == "normal") {
    s.kind = Kind::kNormal;
  } else if (kind == "tilted") {
    s.kind = Kind::kTilted;
    s.a = j.value("a", 0.0);
    s.c = j.value("c", 1.0);
    s.Nprime = j.value("Nprime", s.N + 2.0);
    if (s.Nprime <= s.N) {
      throw std::invalid_argument("ConeStream: tilted streams require Nprime > N");
    }
    s.u = Vector::Zero(n);
    s.u[0] = 1.0;
    if (j.contains("u")) {
      const auto& ju = j.at("u");
      if (static_cast<int>(ju.size()) != n) throw std::invalid_argument("ConeStream: u has wrong length");
      for (int k = 0; k < n; ++k) {
        if (ju[k].is_array()) {
          s.u[k] = Complex(ju[k][0].get<double>(), ju[k][1].get<double>());
        } else {
          s.u[k] = Complex(ju[k].get<double>(), 0.0);
        }
      }
      const double norm = s.u.norm();
      if (norm == 0.0) throw std::invalid_argument("ConeStream: u must be nonzero");
      s.u /= norm;
    }
  } else {
    throw std::invalid_argument("ConeStream: kind must be \"normal\" or \"tilted\"");
  }
  return s;
}

ConeStream::Sample ConeStream::at_log_t(double log_t, int n) const {
  Sample out;
  out.t = LogScalar::from_log(log_t);
  out.re_q1 = -out.t;
  if (kind == Kind::kNormal) {
    out.im_q1 = LogScalar::zero();
    out.r = 0.0;
    out.dir = Vector::Zero(n);
  } else {
    out.im_q1 = LogScalar::from_value(a) * out.t;
    const double log_r = std::log(std::max(c, 0.0)) + log_t / Nprime;
    out.r = c > 0.0 ? LogScalar::from_log(log_r).to_value_clamped() : 0.0;
    out.dir = out.r > 0.0 ? Vector(u) : Vector(Vector::Zero(n));
  }
  return out;
}

bool ConeStream::cone_member_at(double log_t) const {
  if (kind == Kind::kNormal || c == 0.0) return true;  // Re q1 = -t < 0 = -alpha|q'|^N
  // -t < -alpha (c t^(1/N'))^N  <=>  log t > log alpha + N log c + (N/N') log t
  const double rhs = std::log(alpha) + N * std::log(c) + (N / Nprime) * log_t;
  return log_t > rhs;
}

Vector ConeStream::point_at(double log_t, int n) const {
  const Sample s = at_log_t(log_t, n);
  const auto t = s.t.to_value();
  if (!t) throw std::range_error("ConeStream::point_at: t underflows a plain double");
  Vector q(n + 1);
  q[0] = Complex(-*t, s.im_q1.to_value_clamped());
  for (int k = 0; k < n; ++k) q[k + 1] = s.r * (s.dir.size() ? s.dir[k] : Complex(0.0));
  return q;
}

// ---------------------------------------------------------------------------
// Slice normalization

Matrix block_unitary_from_direction(const Vector& dir, int n) {
  Matrix R1 = Matrix::Identity(n + 1, n + 1);
  const double norm = dir.norm();
  if (norm == 0.0) return R1;
  const Vector v = dir / norm;
  // Unitary U on C^n with U v = e1 (completed from v by QR).
  Eigen::MatrixXcd a(n, 1);
  a.col(0) = v;
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(a);
  Matrix q = qr.householderQ();
  Matrix U = q.adjoint();
  const Complex r = (U * v)(0);
  U.row(0) *= std::conj(r) / std::abs(r);
  R1.block(1, 1, n, n) = U;
  return R1;
}

SliceNormalized slice_normalize(const Vector& q) {
  const int n = static_cast<int>(q.size()) - 1;
  SliceNormalized out;
  const Vector dir = q.tail(n);
  const double r = dir.norm();
  out.R1 = block_unitary_from_direction(dir, n);
  out.q_tilde = Vector::Zero(n + 1);
  out.q_tilde[0] = q[0].real();
  if (r > 0.0) out.q_tilde[1] = r;
  return out;
}

// ---------------------------------------------------------------------------
// Foot point

FootPointData foot_point(const ModelDomain& domain, const LogScalar& re_q1, double r) {
  if (re_q1.sign() >= 0) throw std::invalid_argument("foot_point: Re q~_1 must be < 0");
  const FlatProfile& phi = domain.profile;
  if (!(phi.eval(r * r) < -re_q1)) {
    throw std::domain_error("foot_point: q~ lies outside Omega");
  }

  FootPointData f;
  f.re_q1 = re_q1;
  f.r = r;

  if (r == 0.0) {
    f.p2 = 0.0;
    f.p2_minus_r = LogScalar::zero();
    f.phi_p2sq = LogScalar::zero();
    f.phi_prime_p2sq = LogScalar::zero();
    f.p1 = LogScalar::zero();
    f.A = 1.0;
    f.d = -re_q1;
    f.residual_p1 = LogScalar::zero();
    f.residual_p2 = LogScalar::zero();
    return f;
  }

  double p2 = r;
  LogScalar corr = LogScalar::zero();
  LogScalar phi_x, phip_x, d_over_A;
  double A = 1.0;
  for (int it = 0; it < 50; ++it) {
    const double x = p2 * p2;
    phi_x = phi.eval(x);
    phip_x = phi.derivative(x, 1);
    const double grad2 = (LogScalar::from_value(4.0 * x) * phip_x * phip_x).to_value_clamped();
    A = std::sqrt(1.0 + grad2);
    d_over_A = (-re_q1) - phi_x;
    if (d_over_A.sign() <= 0) throw std::domain_error("foot_point: q~ lies outside Omega");
    corr = LogScalar::from_value(2.0 * p2 / A) * phip_x * d_over_A;
    const double next = r + corr.to_value_clamped();
    if (std::fabs(next - p2) <= 1e-16 * p2) {
      p2 = next;
      break;
    }
    p2 = next;
  }

  f.p2 = p2;
  f.p2_minus_r = corr;
  f.phi_p2sq = phi_x;
  f.phi_prime_p2sq = phip_x;
  f.p1 = -phi_x;
  f.A = A;
  f.d = LogScalar::from_value(A) * d_over_A;

  // Residuals of the defining equations, measured relative to their scale.
  const LogScalar lhs_p1 = -phi_x;
  const LogScalar rhs_p1 = re_q1 + d_over_A;
  f.residual_p1 = (lhs_p1 - rhs_p1).abs() / re_q1.abs();
  const LogScalar stored_diff = LogScalar::from_value(p2 - r);
  f.residual_p2 = (stored_diff - corr).abs() / LogScalar::from_value(p2);
  return f;
}

FootPointData foot_point(const ModelDomain& domain, const Vector& q_tilde) {
  const int n = domain.n;
  if (q_tilde.size() != n + 1) throw std::invalid_argument("foot_point: wrong dimension");
  double r = q_tilde.size() > 1 ? std::abs(q_tilde[1]) : 0.0;
  return foot_point(domain, LogScalar::from_value(q_tilde[0].real()), r);
}

// ---------------------------------------------------------------------------
// Tangential scales d*, d1eps, d2eps

namespace {

// Solves  s/A + p2 - off = X(level(s))  where  X(y) = (-1/log y)^(1/2m)
// inverts phi on squared arguments and level is increasing in s.
double solve_tangential_scale(const ModelDomain& domain, const FootPointData& foot,
                              const std::function<LogScalar(double)>& level, double off) {
  const int m = domain.profile.order();
  const double A = foot.A;
  const double p2 = foot.p2;
  const auto X = [&](double s) {
    const LogScalar lv = level(s);
    if (lv.sign() <= 0 || lv >= LogScalar::one()) {
      throw std::domain_error("tangential scale: level outside (0,1); t is not small enough");
    }
    return std::pow(-1.0 / lv.log_magnitude(), 0.5 / m);
  };
  const auto F = [&](double s) { return s / A + p2 - off - X(s); };

  double hi = A * (X(0.0) + 1e-3);
  int guard = 0;
  while (F(hi) <= 0.0 && guard++ < 90) hi *= 1.5;
  if (F(hi) <= 0.0) throw std::runtime_error("tangential scale: bracketing failed");
  RootOptions opts;
  opts.tolerance = 1e-300;  // drive the bracket, not |F|
  opts.x_tolerance = 1e-15 * hi;
  return find_root(F, 0.0, hi, opts);
}

}  // namespace

double d_star(const ModelDomain& domain, const FootPointData& foot) {
  const LogScalar tan_theta = LogScalar::from_value(2.0 * foot.p2) * foot.phi_prime_p2sq;
  const LogScalar coef = tan_theta / LogScalar::from_value(foot.A);
  const double off = (coef * foot.d).to_value_clamped();
  const LogScalar base = foot.d / LogScalar::from_value(foot.A) + foot.phi_p2sq;
  const auto level = [&](double s) { return base + coef * LogScalar::from_value(s); };
  const double s = solve_tangential_scale(domain, foot, level, off);

  // Residual in the log field of the defining equation.
  const LogScalar lhs = level(s);
  const LogScalar rhs = domain.profile.eval((s / foot.A + foot.p2 - off) * (s / foot.A + foot.p2 - off));
  const double rel = std::fabs(lhs.log_magnitude() - rhs.log_magnitude()) /
                     std::fabs(lhs.log_magnitude());
  if (rel > 1e-10) throw std::runtime_error("d_star: residual too large");
  return s;
}

double d_eps(const ModelDomain& domain, const FootPointData& foot, double eps, int which,
             bool* clamped) {
  if (eps <= 0) throw std::invalid_argument("d_eps: eps must be > 0");
  if (which != 1 && which != 2) throw std::invalid_argument("d_eps: which must be 1 or 2");
  const double expo = which == 1 ? 1.0 / (1.0 + eps) : 1.0 / ((1.0 + eps) * (1.0 + eps));
  const double w = domain.w_radius();
  const LogScalar tan_theta = LogScalar::from_value(2.0 * foot.p2) * foot.phi_prime_p2sq;
  const LogScalar coef = tan_theta / LogScalar::from_value(foot.A);
  const double off = (coef * LogScalar::from_value(w)).to_value_clamped();
  const LogScalar base = foot.d.pow(expo) / LogScalar::from_value(foot.A) + foot.phi_p2sq;
  // Worst-case Re z_2 over W enters the level with a + sign (most permissive).
  const auto level = [&](double s) { return base + coef * LogScalar::from_value(std::min(s, w)); };
  double s = solve_tangential_scale(domain, foot, level, -off);
  bool was_clamped = false;
  if (s > w) {
    s = w;
    was_clamped = true;
  }
  if (clamped) *clamped = was_clamped;
  return s;
}

// ---------------------------------------------------------------------------
// Frames

Matrix ScalingFrame::R2() const {
  const int dim = domain.ambient_dim();
  Matrix R = Matrix::Identity(dim, dim);
  const double c = tan_theta.to_value_clamped();
  if (c != 0.0) {
    const double Am = std::sqrt(1.0 + c * c);
    R(0, 0) = 1.0 / Am;
    R(0, 1) = c / Am;
    R(1, 0) = -c / Am;
    R(1, 1) = 1.0 / Am;
  }
  return R;
}

Matrix ScalingFrame::rotation() const { return R2() * R1; }

ScalingFrame make_frame(const ModelDomain& domain, const ConeStream& stream, double log_t) {
  const auto sample = stream.at_log_t(log_t, domain.n);
  ScalingFrame frame;
  frame.domain = domain;
  frame.foot = foot_point(domain, sample.re_q1, sample.r);
  frame.foot.t = sample.t;
  frame.dstar = d_star(domain, frame.foot);
  frame.R1 = block_unitary_from_direction(sample.dir, domain.n);
  frame.tan_theta = LogScalar::from_value(2.0 * frame.foot.p2) * frame.foot.phi_prime_p2sq;
  frame.cone_ok = stream.cone_member_at(log_t);
  return frame;
}

ScalingFrame make_frame(const ModelDomain& domain, const Vector& q, const LogScalar& t) {
  const auto sn = slice_normalize(q);
  ScalingFrame frame;
  frame.domain = domain;
  frame.foot = foot_point(domain, sn.q_tilde);
  frame.foot.t = t;
  frame.dstar = d_star(domain, frame.foot);
  frame.R1 = sn.R1;
  frame.tan_theta = LogScalar::from_value(2.0 * frame.foot.p2) * frame.foot.phi_prime_p2sq;
  return frame;
}

// ---------------------------------------------------------------------------
// gamma_t, Sigma, Cayley

namespace {

struct GammaCoefficients {
  double A;
  double c;     // 2 p2 phi'(p2^2), materialized
  double phim;  // phi(p2^2), materialized
  double p2;
};

GammaCoefficients gamma_coeffs(const ScalingFrame& frame) {
  return {frame.foot.A, frame.tan_theta.to_value_clamped(),
          frame.foot.phi_p2sq.to_value_clamped(), frame.foot.p2};
}

}  // namespace

Vector gamma_apply(const ScalingFrame& frame, const Vector& w) {
  const auto [A, c, phim, p2] = gamma_coeffs(frame);
  Vector out = w;
  const Complex w1p = w[0] + phim;  // w1 - p1
  const Complex w2p = w[1] - p2;
  out[0] = (w1p + c * w2p) / A;
  out[1] = (-c * w1p + w2p) / A;
  return out;
}

Vector gamma_inverse(const ScalingFrame& frame, const Vector& z) {
  const auto [A, c, phim, p2] = gamma_coeffs(frame);
  Vector out = z;
  out[0] = (z[0] - c * z[1]) / A - phim;
  out[1] = (z[1] + c * z[0]) / A + p2;
  return out;
}

Vector sigma_cayley(const ScalingFrame& frame, const Vector& z) {
  const auto dv = frame.d().to_value();
  if (!dv) throw std::range_error("sigma_cayley: d(t) is not representable as a plain double");
  Vector out(z.size());
  const Complex zeta = z[0] / *dv;
  if (zeta == Complex(1.0, 0.0)) throw std::domain_error("sigma_cayley: pole at z1 = d(t)");
  out[0] = (1.0 + zeta) / (1.0 - zeta);
  for (int j = 1; j < z.size(); ++j) out[j] = z[j] / frame.dstar;
  return out;
}

std::vector<LogScalar> sigma_cayley_derivative(const ScalingFrame& frame) {
  std::vector<LogScalar> diag(frame.domain.ambient_dim());
  diag[0] = LogScalar::one() / (LogScalar::from_value(2.0) * frame.d());
  for (int j = 1; j < frame.domain.ambient_dim(); ++j) {
    diag[j] = LogScalar::one() / LogScalar::from_value(frame.dstar);
  }
  return diag;
}

// ---------------------------------------------------------------------------
// Regions

LogScalar rho_gamma_inv(const ScalingFrame& frame, const FramePoint& z) {
  const double A = frame.foot.A;
  const double p2 = frame.foot.p2;
  const LogScalar coef = frame.tan_theta / LogScalar::from_value(A);

  const LogScalar s1 = z.re1 / LogScalar::from_value(A);
  const LogScalar s2 = -(coef * LogScalar::from_value(z.zp[0].real()));
  const LogScalar s3 = -frame.foot.phi_p2sq;

  const Complex offset((coef * z.re1).to_value_clamped(), (coef * z.im1).to_value_clamped());
  const Complex w2 = z.zp[0] / A + p2 + offset;
  double arg = std::norm(w2);
  for (int j = 1; j < z.zp.size(); ++j) arg += std::norm(z.zp[j]);
  const LogScalar s4 = frame.domain.profile.eval(arg);

  return s1 + s2 + s3 + s4;
}

RegionSpec make_region(const ScalingFrame& frame, double eps) {
  if (eps <= 0) throw std::invalid_argument("make_region: eps must be > 0");
  RegionSpec spec;
  spec.eps = eps;
  spec.c0 = std::cos(M_PI / (2.0 * (1.0 + eps)));
  spec.slab = frame.d().pow(1.0 / ((1.0 + eps) * (1.0 + eps)));
  spec.d1eps = d_eps(frame.domain, frame.foot, eps, 1, &spec.d1_clamped);
  spec.d2eps = d_eps(frame.domain, frame.foot, eps, 2, &spec.d2_clamped);
  return spec;
}

LogScalar log_abs_h_eps(double eps, const LogScalar& re1, const LogScalar& im1) {
  if (re1.sign() >= 0) {
    throw std::domain_error("h_eps: principal branch requires Re z1 < 0");
  }
  // -z1 = (x, y) with x > 0; compute arg and |.| scale-invariantly.
  const double lx = re1.log_magnitude();
  const double ly = im1.is_zero() ? -std::numeric_limits<double>::infinity() : im1.log_magnitude();
  const double L = std::max(lx, ly);
  const double ax = std::exp(lx - L);
  const double ay = im1.is_zero() ? 0.0 : -im1.sign() * std::exp(ly - L);
  const double theta = std::atan2(ay, ax);  // in (-pi/2, pi/2)
  const double log_mod = L + 0.5 * std::log(ax * ax + ay * ay);
  const LogScalar mod_pow = LogScalar::from_log(log_mod).pow(1.0 / (1.0 + eps));
  const double cosf = std::cos(theta / (1.0 + eps));
  return -(mod_pow * LogScalar::from_value(cosf));
}

bool region_member(const ScalingFrame& frame, const RegionSpec& spec, const FramePoint& z,
                   Region region) {
  const double w = frame.domain.w_radius();
  const LogScalar wl = LogScalar::from_value(w);
  const bool in_w = z.re1.abs() < wl && z.im1.abs() < wl && z.zp.norm() < w;
  if (region == Region::kW) return in_w;
  if (!in_w) return false;

  if (region == Region::kVt) return z.re1.abs() < spec.slab;

  const bool slab_ok = z.re1 > -spec.slab;
  const bool rho_ok = rho_gamma_inv(frame, z).sign() < 0;
  const bool in_dte = slab_ok && rho_ok;
  if (region == Region::kDte) return in_dte;

  if (!in_dte) return false;
  const LogScalar threshold = -(spec.slab * LogScalar::from_value(spec.c0));
  return log_abs_h_eps(spec.eps, z.re1, z.im1) > threshold;
}

// ---------------------------------------------------------------------------
// Tangent splitting

TangentSplit tangent_split(const ScalingFrame& frame, const Vector& xi) {
  const Matrix R = frame.rotation();
  TangentSplit out;
  out.xi = xi;
  out.model_coords = R * xi;
  const Matrix Rinv = R.adjoint();
  out.xi_normal = out.model_coords[0] * Rinv.col(0);
  out.xi_tangent = Vector::Zero(xi.size());
  for (int j = 1; j < xi.size(); ++j) out.xi_tangent += out.model_coords[j] * Rinv.col(j);
  out.norm_normal = std::abs(out.model_coords[0]);
  out.norm_tangent = out.model_coords.tail(xi.size() - 1).norm();
  return out;
}

// ---------------------------------------------------------------------------
// Sandwich check

SandwichReport sandwich_check(const ScalingFrame& frame, double eps, double delta,
                              int sample_count, std::uint64_t seed) {
  if (delta <= 0.0) throw std::invalid_argument("sandwich_check: delta must be > 0");
  if (eps <= 0.0) throw std::invalid_argument("sandwich_check: eps must be > 0");
  const RegionSpec spec = make_region(frame, eps);
  const int n = frame.domain.n;
  const double w = frame.domain.w_radius();
  SandwichReport report;

  // Inward direction: u in (1-delta)(D x B_n) must pull back into D_t^eps.
  {
    sampling::HaltonSequence seq(2 + 2 * n, seed);
    for (int i = 0; i < sample_count; ++i) {
      Complex u1;
      Vector up;
      for (int attempt = 0;; ++attempt) {
        if (attempt >= 1000) throw std::runtime_error("sandwich_check: ball sampling stalled");
        const auto u = seq.next();
        u1 = sampling::disc_point(u[0], u[1], 1.0);
        double norm2 = 0.0;
        up = Vector(n);
        for (int j = 0; j < n; ++j) {
          const double re = 2.0 * u[2 + 2 * j] - 1.0;
          const double im = 2.0 * u[3 + 2 * j] - 1.0;
          up[j] = Complex(re, im);
          norm2 += re * re + im * im;
        }
        if (norm2 < 1.0) break;
      }
      u1 *= (1.0 - delta);
      up *= (1.0 - delta);

      const Complex zeta = (u1 - 1.0) / (u1 + 1.0);
      FramePoint z;
      z.re1 = frame.d() * LogScalar::from_value(zeta.real());
      z.im1 = frame.d() * LogScalar::from_value(zeta.imag());
      z.zp = frame.dstar * up;
      ++report.samples_in;
      if (!region_member(frame, spec, z, Region::kDte)) ++report.violations_in;
    }
  }

  // Outward direction: w sampled in D_t^eps (rejection over the a-priori W
  // bounds) must map into D x B_n(0, d2eps/d*).
  {
    sampling::HaltonSequence seq(3 + 2 * n, seed ^ 0x9e3779b97f4a7c15ULL);
    const LogScalar re_box = std::min(spec.slab, LogScalar::from_value(w));
    const long max_attempts = 500L * sample_count;
    long attempts = 0;
    while (report.samples_out < sample_count && attempts < max_attempts) {
      ++attempts;
      const auto u = seq.next();
      FramePoint z;
      z.re1 = -(re_box * LogScalar::from_value(u[0]));
      z.im1 = LogScalar::from_value(w * (2.0 * u[1] - 1.0));
      double norm2 = 0.0;
      z.zp = Vector(n);
      for (int j = 0; j < n; ++j) {
        const double re = 2.0 * u[2 + 2 * j] - 1.0;
        const double im = 2.0 * u[3 + 2 * j] - 1.0;
        z.zp[j] = Complex(re, im);
        norm2 += re * re + im * im;
      }
      if (norm2 >= 1.0) continue;
      z.zp *= w;
      if (!region_member(frame, spec, z, Region::kDte)) continue;
      ++report.samples_out;
      const bool disc_ok = z.re1.sign() < 0;  // Cayley maps Re < 0 into the disc
      const bool ball_ok = z.zp.norm() < spec.d2eps;
      if (!(disc_ok && ball_ok)) ++report.violations_out;
    }
    report.starved = report.samples_out < sample_count;
  }

  return report;
}

// ---------------------------------------------------------------------------
// t-grids

std::vector<double> TGrid::log_t_values() const {
  if (points < 1) throw std::invalid_argument("TGrid: points must be >= 1");
  if (log_t_start >= 0 || log_t_end >= 0) throw std::invalid_argument("TGrid: log t must be < 0");
  std::vector<double> v(points);
  if (points == 1) {
    v[0] = log_t_start;
    return v;
  }
  const double a = std::log(-log_t_start);
  const double b = std::log(-log_t_end);
  for (int j = 0; j < points; ++j) {
    v[j] = -std::exp(a + (b - a) * j / (points - 1));
  }
  return v;
}

TGrid TGrid::parse(const std::string& json_text) {
  const json j = json::parse(json_text);
  TGrid g;
  if (j.contains("log10_t_start")) {
    g.log_t_start = j.at("log10_t_start").get<double>() * std::numbers::ln10;
    g.log_t_end = j.at("log10_t_end").get<double>() * std::numbers::ln10;
  } else {
    g.log_t_start = j.at("log_t_start").get<double>();
    g.log_t_end = j.at("log_t_end").get<double>();
  }
  g.points = j.value("points", 40);
  return g;
}

}  // namespace bergman::geometry
