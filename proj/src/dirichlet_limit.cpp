#include "stefan/dirichlet_limit.hpp"

#include <cmath>
#include <stdexcept>

#include "stefan/errors.hpp"
#include "stefan/roots.hpp"

namespace stefan {

namespace {

double f3_coefficient(const StefanProblem& p) {
  return p.liquid.k * p.t_inf /
         (std::pow(2.0, p.alpha + 1.0) * std::pow(p.liquid.d, p.alpha / 2.0 + 1.0) *
          p.gamma);
}

double f1_coefficient(const StefanProblem& p) {
  return p.solid.k * p.t_i * std::pow(p.solid.d, (p.alpha - 1.0) / 2.0) /
         (p.gamma * std::pow(p.liquid.d, (p.alpha + 1.0) / 2.0));
}

}  // namespace

double f3(double x, const StefanProblem& p) {
  if (!(x > 0.0)) throw std::domain_error("f3: x must be positive");
  auto bs = detail::ProfileBasis::for_problem(p);
  return 1.0 / (x * bs.m_pos_one(x * x));
}

double dirichlet_front_lhs(double x, const StefanProblem& p) {
  return f3_coefficient(p) * f3(x, p) - f1_coefficient(p) * f1(x, p);
}

DirichletSolution::DirichletSolution(const StefanProblem& p, double nu_inf,
                                     const Coefficients& c)
    : problem_(p),
      nu_inf_(nu_inf),
      coeffs_(c),
      basis_(detail::ProfileBasis::for_problem(p)) {
  if (!(nu_inf > 0.0))
    throw ValidationError("DirichletSolution: nu_inf must be > 0");
}

double DirichletSolution::front(double t) const {
  if (t < 0.0) throw std::domain_error("front: t must be nonnegative");
  return 2.0 * nu_inf_ * std::sqrt(problem_.liquid.d * t);
}

double DirichletSolution::front_velocity(double t) const {
  if (!(t > 0.0)) throw std::domain_error("front_velocity: t must be positive");
  return nu_inf_ * std::sqrt(problem_.liquid.d / t);
}

double DirichletSolution::liquid_temperature(double x, double t) const {
  if (!(t > 0.0)) throw std::domain_error("liquid_temperature: t must be positive");
  double s = front(t);
  double slack = 1e-12 * (s + std::sqrt(problem_.liquid.d * t));
  if (x < -slack || x > s + slack)
    throw std::domain_error(
        "liquid_temperature: x outside the liquid region [0, s(t)]");
  return detail::profile_value(basis_, coeffs_.e_l, coeffs_.f_l,
                               problem_.liquid.d, x, t);
}

double DirichletSolution::solid_temperature(double x, double t) const {
  if (!(t > 0.0)) throw std::domain_error("solid_temperature: t must be positive");
  double s = front(t);
  double slack = 1e-12 * (s + std::sqrt(problem_.solid.d * t));
  if (x < s - slack)
    throw std::domain_error(
        "solid_temperature: x inside the liquid region x < s(t)");
  return detail::profile_value(basis_, coeffs_.e_s, coeffs_.f_s,
                               problem_.solid.d, x, t);
}

PhaseFluxes DirichletSolution::fluxes(double x, double t) const {
  if (!(t > 0.0)) throw std::domain_error("fluxes: t must be positive");
  return {
      problem_.liquid.k * detail::profile_gradient(basis_, coeffs_.e_l,
                                                   coeffs_.f_l,
                                                   problem_.liquid.d, x, t),
      problem_.solid.k * detail::profile_gradient(basis_, coeffs_.e_s,
                                                  coeffs_.f_s,
                                                  problem_.solid.d, x, t),
  };
}

DirichletSolution solve_dirichlet(const StefanProblem& p) {
  p.validate_sans_h0();

  roots::MonotoneRootSpec spec;
  spec.residual = [&p](double x) {
    return dirichlet_front_lhs(x, p) - std::pow(x, p.alpha + 1.0);
  };
  // The LHS is unbounded at 0+, so a positive starting point always exists:
  // halve from 1 until the residual goes positive.
  double x_lo = 1.0;
  for (int k = 0; spec.residual(x_lo) <= 0.0; ++k) {
    if (k >= 60)
      throw NumericalError("solve_dirichlet: no positive residual found near 0");
    x_lo *= 0.5;
  }
  spec.x_lo = x_lo;
  spec.x_init_hi = std::max(1.0, 2.0 * x_lo);
  spec.tol_abs = 1e-12;
  spec.tol_res = 1e-10 * (1.0 + std::abs(dirichlet_front_lhs(1.0, p)));
  double nu_inf = roots::solve_monotone(spec);

  auto bs = detail::ProfileBasis::for_problem(p);
  double w = p.omega();
  double p1 = bs.phi1(nu_inf);
  if (!(std::abs(p1) > 1e-300))
    throw NumericalError("solve_dirichlet: vanishing phi1 at nu_inf");
  double e_l = p.t_inf;
  double f_l = -p.t_inf * bs.phi0(nu_inf) / p1;

  double zs = nu_inf * nu_inf * w * w;
  double u = bs.u_half(zs);
  double m0s = bs.phi0(nu_inf * w);
  if (!(std::abs(u) > 1e-300) || !(std::abs(m0s) > 1e-300))
    throw NumericalError("solve_dirichlet: vanishing solid denominator");
  double f_s = -p.t_i * std::pow(2.0, p.alpha + 1.0) *
               std::pow(p.solid.d, p.alpha / 2.0) * bs.m_pos_half(zs) / u;
  double e_s = -bs.phi1(nu_inf * w) / m0s * f_s;

  return {p, nu_inf, Coefficients{e_l, f_l, e_s, f_s}};
}

std::vector<ConvergenceRow> convergence_study(const StefanProblem& p,
                                              std::span<const double> h0_ladder) {
  double threshold = h0_threshold(p);
  for (double h0 : h0_ladder)
    if (!(h0 > threshold))
      throw ValidationError("convergence_study: ladder h0 below threshold");

  DirichletSolution limit = solve_dirichlet(p);
  std::vector<ConvergenceRow> rows;
  rows.reserve(h0_ladder.size());
  for (double h0 : h0_ladder) {
    StefanProblem q = p;
    q.h0 = h0;
    auto outcome = solve(q);
    const auto* two_phase = std::get_if<SimilaritySolution>(&outcome);
    if (two_phase == nullptr)
      throw NumericalError(
          "convergence_study: above-threshold instance solved as conduction");
    double nu = two_phase->nu();
    rows.push_back({h0, nu, limit.nu_inf(), std::abs(nu - limit.nu_inf())});
  }
  return rows;
}

}  // namespace stefan
