#pragma once

// Special-function kernels used by the similarity solutions: the Gamma
// function, the confluent hypergeometric (Kummer) functions M and U, the
// repeated integrals of the complementary error function, and their even/odd
// combinations E_n, F_n.
//
// Accuracy targets (double precision):
//   gamma_fn  relative error <= 1e-13 on |x| <= 50
//   kummer_m  relative error <= 1e-10 for |z| <= 100 (negative z handled by
//             the transformation M(a,b,z) = e^z M(b-a,b,-z); beyond that an
//             algebraic large-argument expansion takes over)
//   kummer_u  relative error <= 1e-9; near-cancellation in the reflection
//             formula triggers a quadrature fallback on the integral
//             representation
//   inerfc    relative error <= 1e-9 for x in [0, 10], n <= 30 (backward
//             recurrence normalized by erfc; forward recurrence for x < 0,
//             where all contributions are positive)
//
// All functions are pure and safe for concurrent use.

namespace stefan::specfun {

struct KummerArgs {
  double a;
  double b;  // must not be zero or a negative integer
  double z;
};

// Gamma function via Lanczos approximation with reflection for x < 1/2.
// Throws std::domain_error at the poles x = 0, -1, -2, ...
double gamma_fn(double x);

// Kummer M(a,b,z) = sum_s (a)_s / ((b)_s s!) z^s.
double kummer_m(const KummerArgs& args);

struct UEval {
  double value;
  bool cancellation;    // the two reflection-formula terms nearly cancelled
  bool via_quadrature;  // value computed from the integral representation
};

// Tricomi U(a,b,z) for z >= 0.  Evaluated through the M-reflection formula;
// requires that neither a nor a-b+1 is a nonpositive integer and that b is
// not an integer.  Integer-alpha solver paths must route through E_n/F_n
// instead.  When the two terms cancel below 1e-6 of their magnitude the
// value is recomputed by adaptive quadrature of the integral representation
// (requires a > 0).
UEval kummer_u_eval(const KummerArgs& args);
double kummer_u(const KummerArgs& args);

// n-fold repeated integral of erfc: i^0 erfc = erfc,
// i^n erfc(x) = int_x^inf i^{n-1} erfc(t) dt.
double inerfc(int n, double x);

struct EnFn {
  double e;  // E_n(z) = [i^n erfc(z) + i^n erfc(-z)] / 2
  double f;  // F_n(z) = [i^n erfc(-z) - i^n erfc(z)] / 2, so that F_0 = erf
};

EnFn en_fn(int n, double z);

}  // namespace stefan::specfun
