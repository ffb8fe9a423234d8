#pragma once

#include <variant>

namespace stefan {

// Per-phase thermal properties.
struct PhaseProps {
  double k;  // thermal conductivity, W/(m C)
  double d;  // diffusivity, m^2/s
};

// Melting of a semi-infinite solid with latent heat gamma x^alpha, initial
// temperature -t_i x^alpha, ambient temperature t_inf t^{alpha/2} imposed
// through a convective (Robin) condition with coefficient h0 at x = 0.
// All quantities in consistent SI units; no conversion is performed.
struct StefanProblem {
  double alpha;
  double gamma;
  double t_i;
  double t_inf;
  double h0;
  PhaseProps liquid;
  PhaseProps solid;

  double omega() const;         // sqrt(d_l / d_s)
  bool integer_alpha() const;   // |alpha - round(alpha)| < 1e-12
  void validate() const;        // throws ValidationError naming the field
  void validate_sans_h0() const;  // same, h0 not required
};

struct Coefficients {
  double e_l;
  double f_l;
  double e_s;
  double f_s;
};

struct PhaseFluxes {
  double liquid;  // k_l * dPsi_l/dx
  double solid;   // k_s * dPsi_s/dx
};

namespace detail {

// Kummer evaluation kernel for the similarity profiles
//   t^{alpha/2} [ E M(-alpha/2, 1/2, -eta^2) + F eta M(-alpha/2+1/2, 3/2, -eta^2) ].
// Integral alpha = n routes through the repeated-erfc-integral family E_n/F_n,
// which stays well defined where the M&U connection formula hits Gamma poles
// and keeps U free of the reflection-formula cancellation.
struct ProfileBasis {
  double alpha;
  int n = -1;  // >= 0 when on the integer route

  static ProfileBasis general(double alpha) { return {alpha, -1}; }
  static ProfileBasis integer(int n) { return {static_cast<double>(n), n}; }
  static ProfileBasis for_problem(const StefanProblem& p);

  bool integer_path() const { return n >= 0; }

  double phi0(double eta) const;  // M(-alpha/2, 1/2, -eta^2)
  double phi1(double eta) const;  // eta M(-alpha/2+1/2, 3/2, -eta^2)
  // E alpha eta M(-alpha/2+1, 3/2, -eta^2) + F/2 M(-alpha/2+1/2, 1/2, -eta^2)
  double grad_bracket(double e, double f, double eta) const;
  double u_half(double z) const;      // U(alpha/2+1/2, 1/2, z), z >= 0
  double m_pos_half(double z) const;  // M(alpha/2+1/2, 1/2, z)
  double m_pos_one(double z) const;   // M(alpha/2+1,   3/2, z)
};

double profile_value(const ProfileBasis& bs, double e, double f, double d,
                     double x, double t);
double profile_gradient(const ProfileBasis& bs, double e, double f, double d,
                        double x, double t);

}  // namespace detail

// Two-phase similarity solution: front s(t) = 2 nu sqrt(d_l t) and the
// Kummer-series temperature profiles on each side of it.  Immutable after
// construction; evaluation is pure.
class SimilaritySolution {
 public:
  SimilaritySolution(const StefanProblem& p, double nu, const Coefficients& c);

  const StefanProblem& problem() const { return problem_; }
  double nu() const { return nu_; }
  double omega() const;
  const Coefficients& coefficients() const { return coeffs_; }

  double front(double t) const;           // s(t), t >= 0
  double front_velocity(double t) const;  // ds/dt, t > 0

  // Temperatures reject x on the wrong side of s(t) rather than extrapolate.
  double liquid_temperature(double x, double t) const;
  double solid_temperature(double x, double t) const;

  // (k_l Psi_l_x, k_s Psi_s_x); the Stefan balance reads
  // solid - liquid = gamma s(t)^alpha ds/dt at x = s(t).
  PhaseFluxes fluxes(double x, double t) const;

 private:
  StefanProblem problem_;
  double nu_;
  Coefficients coeffs_;
  detail::ProfileBasis basis_;
};

// Sub-threshold regime: no melting, single solid phase with the same Robin
// condition, with explicit closed-form coefficients.
class ConductionSolution {
 public:
  ConductionSolution(const StefanProblem& p, double e_s, double f_s);

  const StefanProblem& problem() const { return problem_; }
  double e_s() const { return e_s_; }
  double f_s() const { return f_s_; }

  double temperature(double x, double t) const;  // x >= 0, t > 0
  double flux(double x, double t) const;         // k_s dPsi_s/dx

 private:
  StefanProblem problem_;
  double e_s_;
  double f_s_;
  detail::ProfileBasis basis_;
};

using SolveOutcome = std::variant<SimilaritySolution, ConductionSolution>;

// Critical convective coefficient 2^alpha Gamma(alpha/2+1) k_s t_i
// d_s^{(alpha-1)/2} / (t_inf sqrt(pi)); melting starts iff h0 exceeds it.
double h0_threshold(const StefanProblem& p);

// f1(x) = 1 / U(alpha/2+1/2, 1/2, x^2 omega^2), increasing from
// Gamma(alpha/2+1)/sqrt(pi).
double f1(double x, const StefanProblem& p);

// f2(x) = 1 / [M(alpha/2+1/2,1/2,x^2) + 2 sqrt(d_l) h0/k_l x M(alpha/2+1,3/2,x^2)],
// decreasing from 1 to 0.
double f2(double x, const StefanProblem& p);

// Left-hand side of the front equation; the front coefficient nu solves
// front_equation_lhs(x) = x^{alpha+1}.
double front_equation_lhs(double x, const StefanProblem& p);

// Temperature-expansion coefficients for a given front coefficient.
Coefficients coefficients_from_nu(double nu, const StefanProblem& p);

// Full pipeline: threshold branch, root solve, coefficients.  Integral alpha
// dispatches to solve_integer_alpha.
SolveOutcome solve(const StefanProblem& p);

// Same pipeline evaluated through the E_n/F_n family; requires alpha
// integral.
SolveOutcome solve_integer_alpha(const StefanProblem& p);

}  // namespace stefan
