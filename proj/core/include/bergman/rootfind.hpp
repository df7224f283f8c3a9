#pragma once

#include <functional>

namespace bergman {

struct RootOptions {
  double tolerance = 1e-14;   // |f| stopping tolerance
  double x_tolerance = 0.0;   // optional bracket-width tolerance (0 = machine)
  int max_iterations = 200;
};

/// Root of f on [lo, hi].  f must change sign on the bracket.  Bisection
/// establishes a safe interval, then Newton steps (numeric derivative) are
/// taken whenever they stay inside it.  Throws std::invalid_argument when
/// there is no sign change and std::runtime_error on non-convergence.
double find_root(const std::function<double(double)>& f, double lo, double hi,
                 const RootOptions& opts = {});

}  // namespace bergman
