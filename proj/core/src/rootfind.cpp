#include "bergman/rootfind.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace bergman {

double find_root(const std::function<double(double)>& f, double lo, double hi,
                 const RootOptions& opts) {
  double flo = f(lo);
  double fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if ((flo > 0) == (fhi > 0)) {
    throw std::invalid_argument("find_root: no sign change on the bracket");
  }

  double x = 0.5 * (lo + hi);
  for (int it = 0; it < opts.max_iterations; ++it) {
    double fx = f(x);
    if (std::fabs(fx) <= opts.tolerance) return x;
    if ((fx > 0) == (fhi > 0)) {
      hi = x;
      fhi = fx;
    } else {
      lo = x;
      flo = fx;
    }
    const double width = hi - lo;
    const double xtol = opts.x_tolerance > 0 ? opts.x_tolerance
                                             : 4.0 * std::numeric_limits<double>::epsilon() * std::max(std::fabs(lo), std::fabs(hi));
    if (width <= xtol) return 0.5 * (lo + hi);

    // Newton step with numeric derivative; fall back to bisection when the
    // step leaves the bracket or the derivative degenerates.
    const double h = std::max(1e-7 * std::fabs(x), 1e-300);
    const double dfx = (f(x + h) - fx) / h;
    double next = x - fx / dfx;
    if (!std::isfinite(next) || next <= lo || next >= hi) {
      next = 0.5 * (lo + hi);
    }
    x = next;
  }
  throw std::runtime_error("find_root: did not converge");
}

}  // namespace bergman
