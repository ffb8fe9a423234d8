#pragma once

#include <span>
#include <vector>

#include "stefan/model.hpp"

namespace stefan {

// h0 -> infinity limit: the prescribed-temperature problem
// Psi_l(0,t) = t_inf t^{alpha/2}, same front form s(t) = 2 nu_inf sqrt(d_l t).
// Always solvable: the front-equation LHS runs from +inf to -inf.
class DirichletSolution {
 public:
  DirichletSolution(const StefanProblem& p, double nu_inf,
                    const Coefficients& c);

  const StefanProblem& problem() const { return problem_; }
  double nu_inf() const { return nu_inf_; }
  const Coefficients& coefficients() const { return coeffs_; }

  double front(double t) const;
  double front_velocity(double t) const;
  double liquid_temperature(double x, double t) const;
  double solid_temperature(double x, double t) const;
  PhaseFluxes fluxes(double x, double t) const;

 private:
  StefanProblem problem_;
  double nu_inf_;
  Coefficients coeffs_;
  detail::ProfileBasis basis_;
};

// f3(x) = 1 / (x M(alpha/2+1, 3/2, x^2)), x > 0; decreasing, +inf at 0+.
double f3(double x, const StefanProblem& p);

// Left-hand side of the nu_inf equation
//   k_l t_inf / (2^{alpha+1} d_l^{alpha/2+1} gamma) f3(x) - c1 f1(x).
double dirichlet_front_lhs(double x, const StefanProblem& p);

// Solves the limit problem; h0 in the input is ignored.
DirichletSolution solve_dirichlet(const StefanProblem& p);

struct ConvergenceRow {
  double h0;
  double nu;
  double nu_inf;
  double gap;  // |nu - nu_inf|
};

// nu(h0) against nu_inf along an increasing ladder of h0, all above the
// threshold.
std::vector<ConvergenceRow> convergence_study(const StefanProblem& p,
                                              std::span<const double> h0_ladder);

}  // namespace stefan
