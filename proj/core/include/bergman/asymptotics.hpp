#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bergman/geometry.hpp"
#include "bergman/reinhardt.hpp"

namespace bergman::asymptotics {

using geometry::ConeStream;
using geometry::ModelDomain;
using geometry::TGrid;
using geometry::Vector;

/// Per-t diagnostics of the boundary-scale limit quantities along a
/// stream.  The first five columns tend to 0; r/p2 tends to 1; the ratio
/// columns obey per-epsilon lower bounds (1+eps)^(-1/(2m)), (1+eps)^(-1/m).
struct StreamLimitRow {
  double log_t = 0.0;
  LogScalar phi_over_d;
  LogScalar phi_prime_over_d;
  LogScalar p2_over_dstar;
  LogScalar d_over_dstar;
  LogScalar d_over_dstar_pow;  // d / d*^(N+1)
  double r_over_p2 = 0.0;
  std::vector<double> dstar_over_d1;  // one per epsilon
  std::vector<double> dstar_over_d2;
  bool cone_ok = true;
};

struct StreamLimitTable {
  std::vector<double> eps_list;
  double stream_N = 0.0;
  std::vector<StreamLimitRow> rows;

  /// Largest log t (least negative) from which on all five limit columns
  /// stay below the threshold; +1 if never.
  double below_threshold_from(double threshold) const;
  /// All five limit columns non-increasing from the given log t on.
  bool monotone_tail_from(double log_t_from) const;
  /// min over grid of dstar_over_d1[i] (and _d2) for epsilon index i.
  double min_ratio_d1(std::size_t eps_index) const;
  double min_ratio_d2(std::size_t eps_index) const;
};

StreamLimitTable limit_series(const ModelDomain& domain, const ConeStream& stream,
                            const TGrid& grid, const std::vector<double>& eps_list,
                            int jobs = 1);

/// One certified bracket at one t.  All reported quantities are the
/// NORMALIZED ratios (O(1) numbers); the enormous d(t) powers cancel in
/// the normalization and are never materialized.
struct RatioRecord {
  double log_t = 0.0;
  LogScalar d;
  double dstar = 0.0;
  double d1eps = 0.0;
  double d2eps = 0.0;
  double lower = 0.0;
  double upper = 0.0;
  double center = 0.0;  // geometric-mean style center; NOT certified
  bool certified = false;
};

struct RatioSeries {
  std::string kind;  // "kernel", "metric" or "curvature"
  double eps = 0.0;
  double delta = 0.0;
  double target = 0.0;
  std::vector<RatioRecord> records;

  bool brackets_contain_target(double slack = 1e-12) const;  // certified records only
  int certified_count() const;
};

struct RatioOptions {
  int truncation = 60;
  int certify_samples = 1500;  // inclusion check sample count per t (0 = skip)
  std::uint64_t seed = 20240817;
  int jobs = 1;
};

/// Certified two-sided bounds on kappa(q(t)-frame) * (2d)^2 * (d*)^(2n) / 4
/// from the inclusion (1-delta)(D x B_n) in f.Sigma(D_t^eps) in
/// D x B_n(0, d2eps/d*); target 1/(4 pi vol(B_n)) = n!/(4 pi^(n+1)).
RatioSeries kernel_ratio_bounds(const ModelDomain& domain, const ConeStream& stream,
                                double eps, double delta, const TGrid& grid,
                                const RatioOptions& options = {});

/// Bounds on B(q(t); xi) / sqrt(|xi_N|^2/(2d^2) + (n+1)|xi_T|^2/d*^2);
/// target 1.
RatioSeries metric_ratio_bounds(const ModelDomain& domain, const ConeStream& stream,
                                const Vector& xi, double eps, double delta, const TGrid& grid,
                                const RatioOptions& options = {});

/// Bounds on H(q(t); xi) normalized by
/// (2 x^4 + (n+1) y^4)/(2 x^2 + (n+1) y^2)^2, x = |xi_N|/(2d),
/// y = |xi_T|/d*; target -2.
RatioSeries curvature_ratio_bounds(const ModelDomain& domain, const ConeStream& stream,
                                   const Vector& xi, double eps, double delta,
                                   const TGrid& grid, const RatioOptions& options = {});

/// The fixed (eps, delta) schedule swept by the harness, loosest first.
std::vector<std::pair<double, double>> default_schedule();

/// Two-scale counterexample for the m = 1 profile: d1(t) from
/// -sqrt(t) + phi(d1^2) = 0, d*(t) from -t + phi(d*^2) = 0, and the
/// quotient phi(|d* u2|^2) / sqrt(phi(d*^2)) over a |u2| grid.  The
/// quotient tends to 0 for |u2| < sqrt(2) and blows up for |u2| > sqrt(2);
/// in particular it does NOT switch at |u2| = 1.
struct CounterexampleReport {
  std::vector<double> log_t;
  std::vector<double> d1;
  std::vector<double> dstar;
  std::vector<double> ratio;  // d1 / d*
  std::vector<double> u2;
  std::vector<std::vector<LogScalar>> quotient;  // [t index][u2 index]

  double max_ratio_deviation() const;  // max |ratio - sqrt(2)|
};

CounterexampleReport counterexample(const TGrid& grid, const std::vector<double>& u2_grid);

}  // namespace bergman::asymptotics
