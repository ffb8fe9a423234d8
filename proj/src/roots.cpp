#include "stefan/roots.hpp"

#include <cmath>
#include <string>

#include "stefan/errors.hpp"

namespace stefan::roots {

double solve_monotone(const MonotoneRootSpec& spec) {
  double lo = spec.x_lo;
  double flo = spec.residual(lo);
  if (!(flo > 0.0))
    throw NumericalError(
        "solve_monotone: residual not positive at the lower bracket "
        "(existence condition fails), residual(" +
        std::to_string(lo) + ")=" + std::to_string(flo));

  double hi = std::max(spec.x_init_hi, 2.0 * lo);
  double fhi = spec.residual(hi);
  for (int k = 0; fhi >= 0.0; ++k) {
    if (k >= 60)
      throw NumericalError("solve_monotone: no sign change after 60 doublings");
    lo = hi;
    flo = fhi;
    hi *= 2.0;
    fhi = spec.residual(hi);
  }

  // Monotonicity spot check over the bracket; the probes also tighten it.
  {
    double slack = 1e-9 * (std::abs(flo) + std::abs(fhi)) + spec.tol_res;
    double prev = flo;
    double span_lo = lo, span_hi = hi;
    for (int i = 1; i <= 8; ++i) {
      double x = span_lo + i * (span_hi - span_lo) / 9.0;
      double v = spec.residual(x);
      if (v > prev + slack)
        throw NumericalError(
            "solve_monotone: residual increased across the bracket "
            "(non-monotone input)");
      prev = v;
      if (v >= 0.0) {
        lo = x;
        flo = v;
      } else if (hi == span_hi) {  // first negative probe tightens hi
        hi = x;
        fhi = v;
      }
    }
  }

  double x = lo;
  int since_bisect = 0;
  for (int iter = 0; iter < 250; ++iter) {
    // floating-point floor: a bracket around x cannot shrink below ~ulp(x)
    double tol_width =
        std::max(spec.tol_abs, 4.0 * 2.220446049250313e-16 * std::abs(hi));
    double width = hi - lo;
    bool secant_ok = false;
    if (since_bisect < 2 && fhi != flo) {
      double xs = lo - flo * width / (fhi - flo);
      if (std::isfinite(xs) && xs > lo + 0.01 * width && xs < hi - 0.01 * width) {
        x = xs;
        secant_ok = true;
        ++since_bisect;
      }
    }
    if (!secant_ok) {
      x = lo + 0.5 * width;
      since_bisect = 0;
    }
    double fx = spec.residual(x);
    if (fx >= 0.0) {
      lo = x;
      flo = fx;
    } else {
      hi = x;
      fhi = fx;
    }
    if (hi - lo <= tol_width && std::abs(fx) <= spec.tol_res) return x;
  }

  if (hi - lo <= std::max(spec.tol_abs,
                          4.0 * 2.220446049250313e-16 * std::abs(hi))) {
    double mid = 0.5 * (lo + hi);
    if (std::abs(spec.residual(mid)) <= spec.tol_res) return mid;
  }
  throw NumericalError("solve_monotone: failed to converge to tolerance");
}

}  // namespace stefan::roots
