#pragma once

#include <functional>

namespace stefan::roots {

// Root specification for a strictly decreasing residual with a single sign
// change on (0, inf): residual(x) = LHS(x) - x^{alpha+1} in the front
// equations.  residual(x_lo) > 0 is the existence condition and is checked.
struct MonotoneRootSpec {
  std::function<double(double)> residual;
  double x_lo = 1e-12;        // lower probe; residual must be positive here
  double x_init_hi = 1.0;     // initial upper probe, doubled until negative
  double tol_abs = 1e-12;     // bracket width at convergence
  double tol_res = 1e-10;     // residual magnitude at the returned root
};

// Brackets by doubling x_init_hi (at most 60 times), spot-checks
// monotonicity at 8 interior points, then hybrid secant/bisection.  The
// bracket invariant residual(lo) >= 0 >= residual(hi) holds throughout.
// Deterministic for identical inputs.  Throws NumericalError on a failed
// precondition, missing sign change, or detected non-monotonicity.
double solve_monotone(const MonotoneRootSpec& spec);

}  // namespace stefan::roots
