#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "bergman/log_scalar.hpp"
#include "bergman/profile.hpp"

namespace bergman::geometry {

using Complex = std::complex<double>;
using Vector = Eigen::VectorXcd;
using Matrix = Eigen::MatrixXcd;

/// Model domain Omega = { Re z_1 + phi(|z_2|^2 + ... + |z_{n+1}|^2) < 0 }
/// in C^{n+1}, with neighborhood box scale delta0.
struct ModelDomain {
  int n = 1;  // ambient complex dimension is n + 1
  FlatProfile profile{1};
  double delta0 = 0.1;

  int ambient_dim() const { return n + 1; }
  double w_radius() const { return delta0 / 10.0; }
};

/// rho(z) for a plain point; the phi term is evaluated in the log domain
/// and combined with the linear term by signed log addition.
LogScalar rho_eval(const ModelDomain& domain, const Vector& z);

/// Strict cone membership Re z_1 < -alpha |z'|^N.
bool cone_member(double alpha, double N, const Vector& z);

/// Curve q(t) approaching the origin.  "normal": q(t) = (-t, 0).
/// "tilted": q(t) = (-t + i a t, c t^(1/Nprime) u) with u a unit vector
/// in C^n.
struct ConeStream {
  double alpha = 1.0;
  double N = 4.0;
  enum class Kind { kNormal, kTilted } kind = Kind::kNormal;
  double a = 0.0;
  double c = 0.0;
  double Nprime = 0.0;
  Vector u;  // unit direction in C^n (tilted only)

  static ConeStream parse(const std::string& json_text, int n);

  struct Sample {
    LogScalar t;
    LogScalar re_q1;  // = -t
    LogScalar im_q1;  // = a t
    double r;         // |(0, q_2, ..., q_{n+1})|, materialized (polynomially small)
    Vector dir;       // unit direction of q' in C^n (zero vector when r = 0)
  };
  Sample at_log_t(double log_t, int n) const;

  /// Membership of q(t) in C_{alpha,N}, decided in the log domain.
  bool cone_member_at(double log_t) const;

  /// Plain-point image q(t) for moderate t (throws if it underflows).
  Vector point_at(double log_t, int n) const;
};

/// Slice normalization q -> q~ = (Re q_1, |q'|, 0, ..., 0) together with
/// the ambient unitary R1 that realizes it (identity when |q'| = 0).
struct SliceNormalized {
  Vector q_tilde;
  Matrix R1;
};
SliceNormalized slice_normalize(const Vector& q);

/// Builds the block unitary fixing e_1 and mapping dir/|dir| (in the z'
/// block) to e_2.  dir has length n.
Matrix block_unitary_from_direction(const Vector& dir, int n);

/// Foot point data for a slice-normalized stream point q~ = (re_q1, r).
struct FootPointData {
  LogScalar t;            // stream parameter (zero if not built from a stream)
  LogScalar re_q1;        // Re q~_1 < 0
  double r = 0.0;         // tangential offset of q~
  double p2 = 0.0;        // foot point second coordinate (p2 >= 0)
  LogScalar p2_minus_r;   // exact correction p2 - r, kept in the log domain
  LogScalar p1;           // = -phi(p2^2)
  double A = 1.0;         // |grad rho(p)|
  LogScalar d;            // normal distance d(t)
  LogScalar phi_p2sq;     // phi(p2^2)
  LogScalar phi_prime_p2sq;  // phi'(p2^2)
  LogScalar residual_p1;  // relative residual of the (p1) equation
  LogScalar residual_p2;  // relative residual of the (p2) equation
};

FootPointData foot_point(const ModelDomain& domain, const LogScalar& re_q1, double r);
FootPointData foot_point(const ModelDomain& domain, const Vector& q_tilde);

/// Tangential boundary scale: the unique s > 0 with
///   d/A + (2 p2 phi'(p2^2)/A) s + phi(p2^2)
///     = phi([s/A + p2 - (2 p2 phi'(p2^2)/A) d]^2),
/// solved in psi coordinates.
double d_star(const ModelDomain& domain, const FootPointData& foot);

/// Full per-t frame: foot point, d*, the rotations R1/R2 and translation
/// data defining gamma_t, Sigma and the Cayley map.
struct ScalingFrame {
  ModelDomain domain;
  FootPointData foot;
  double dstar = 0.0;
  Matrix R1;               // ambient unitary from slice normalization
  LogScalar tan_theta;     // 2 p2 phi'(p2^2), exact
  bool cone_ok = true;     // cone membership of q(t) (diagnostic)

  LogScalar d() const { return foot.d; }
  double A() const { return foot.A; }
  double p2() const { return foot.p2; }

  /// R2 as a materialized ambient matrix (identity beyond the (z1,z2) block).
  Matrix R2() const;
  /// R2 * R1.
  Matrix rotation() const;
};

ScalingFrame make_frame(const ModelDomain& domain, const ConeStream& stream, double log_t);
/// Frame for an explicit slice point (testing / CLI use).
ScalingFrame make_frame(const ModelDomain& domain, const Vector& q, const LogScalar& t = LogScalar::zero());

/// gamma_t and its inverse on plain points.
Vector gamma_apply(const ScalingFrame& frame, const Vector& w);
Vector gamma_inverse(const ScalingFrame& frame, const Vector& z);

/// f o Sigma with f the Cayley map on the first slot; requires d(t), d*(t)
/// materializable for plain points.
Vector sigma_cayley(const ScalingFrame& frame, const Vector& z);
/// Diagonal of (f o Sigma)'(-d, 0): (1/(2d), 1/d*, ..., 1/d*).
std::vector<LogScalar> sigma_cayley_derivative(const ScalingFrame& frame);

/// Point in the gamma_t frame with the first coordinate carried in the log
/// domain (its real part ranges over exponentially small scales while the
/// imaginary part may be O(1)).
struct FramePoint {
  LogScalar re1;
  LogScalar im1;
  Vector zp;  // z_2 ... z_{n+1}, plain
};

/// Sign of rho o gamma_t^{-1} at a frame point (log-domain evaluation).
LogScalar rho_gamma_inv(const ScalingFrame& frame, const FramePoint& z);

/// epsilon-dependent region data.
struct RegionSpec {
  double eps = 0.5;
  double c0 = 0.0;       // cos(pi / (2(1+eps)))
  LogScalar slab;        // d(t)^(1/(1+eps)^2)
  double d1eps = 0.0;
  double d2eps = 0.0;
  bool d1_clamped = false;
  bool d2_clamped = false;
};

RegionSpec make_region(const ScalingFrame& frame, double eps);

/// Radial sup solve behind d1eps/d2eps; exposed for tests.  `which` is 1 or 2.
double d_eps(const ModelDomain& domain, const FootPointData& foot, double eps, int which,
             bool* clamped = nullptr);

enum class Region { kW, kVt, kDte, kDteTilde };

bool region_member(const ScalingFrame& frame, const RegionSpec& spec, const FramePoint& z,
                   Region region);

/// log |h_eps(z)| = -Re[(-z_1)^(1/(1+eps))], principal branch; throws on
/// Re z_1 >= 0.
LogScalar log_abs_h_eps(double eps, const LogScalar& re1, const LogScalar& im1);

/// Tangential/normal splitting of xi at the frame's foot point.
struct TangentSplit {
  Vector xi;
  Vector xi_normal;
  Vector xi_tangent;
  double norm_normal = 0.0;
  double norm_tangent = 0.0;
  /// xi expressed in model coordinates (R2 R1 xi); slot 1 is normal.
  Vector model_coords;
};

TangentSplit tangent_split(const ScalingFrame& frame, const Vector& xi);

/// Sampled verification of the sandwich inclusions
///   (1-delta) (D x B_n) subset f o Sigma(D_t^eps) subset D x B_n(0, d2eps/d*).
struct SandwichReport {
  int violations_in = 0;
  int violations_out = 0;
  int samples_in = 0;
  int samples_out = 0;
  bool starved = false;  // rejection sampling failed to reach sample_count
};

SandwichReport sandwich_check(const ScalingFrame& frame, double eps, double delta,
                              int sample_count, std::uint64_t seed);

/// Grid of t values, geometric in |log t|.
struct TGrid {
  double log_t_start = -50.0;
  double log_t_end = -2000.0;
  int points = 40;

  std::vector<double> log_t_values() const;
  static TGrid parse(const std::string& json_text);
};

}  // namespace bergman::geometry
