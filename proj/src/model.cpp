#include "stefan/model.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "stefan/errors.hpp"
#include "stefan/roots.hpp"
#include "stefan/specfun.hpp"

namespace stefan {

namespace {

constexpr double kSqrtPi = 1.7724538509055160273;
constexpr double kDenomFloor = 1e-300;

void require_positive(double v, const char* name) {
  if (!(v > 0.0)) throw ValidationError(std::string(name) + " must be > 0");
}

void check_denominator(double v, const char* what) {
  if (!(std::abs(v) > kDenomFloor))
    throw NumericalError(std::string("vanishing denominator in ") + what);
}

struct FrontTerms {
  double c1;  // multiplies f1 (with a minus sign)
  double c2;  // multiplies f2
};

FrontTerms front_terms(const StefanProblem& p) {
  double dl_pow = std::pow(p.liquid.d, (p.alpha + 1.0) / 2.0);
  return {
      p.solid.k * p.t_i * std::pow(p.solid.d, (p.alpha - 1.0) / 2.0) /
          (p.gamma * dl_pow),
      p.h0 * p.t_inf / (p.gamma * std::pow(2.0, p.alpha) * dl_pow),
  };
}

}  // namespace

double StefanProblem::omega() const { return std::sqrt(liquid.d / solid.d); }

bool StefanProblem::integer_alpha() const {
  return std::abs(alpha - std::round(alpha)) < 1e-12;
}

void StefanProblem::validate_sans_h0() const {
  if (!(alpha >= 0.0)) throw ValidationError("alpha must be >= 0");
  require_positive(gamma, "gamma");
  require_positive(t_i, "t_i");
  require_positive(t_inf, "t_inf");
  require_positive(liquid.k, "liquid.k");
  require_positive(liquid.d, "liquid.d");
  require_positive(solid.k, "solid.k");
  require_positive(solid.d, "solid.d");
}

void StefanProblem::validate() const {
  validate_sans_h0();
  require_positive(h0, "h0");
}

namespace detail {

ProfileBasis ProfileBasis::for_problem(const StefanProblem& p) {
  if (p.integer_alpha())
    return ProfileBasis::integer(static_cast<int>(std::llround(p.alpha)));
  return ProfileBasis::general(p.alpha);
}

double ProfileBasis::phi0(double eta) const {
  if (integer_path())
    return std::pow(2.0, n) * specfun::gamma_fn(n / 2.0 + 1.0) *
           specfun::en_fn(n, eta).e;
  return specfun::kummer_m({-alpha / 2.0, 0.5, -eta * eta});
}

double ProfileBasis::phi1(double eta) const {
  if (integer_path())
    return std::pow(2.0, n - 1) * specfun::gamma_fn(n / 2.0 + 0.5) *
           specfun::en_fn(n, eta).f;
  return eta * specfun::kummer_m({-alpha / 2.0 + 0.5, 1.5, -eta * eta});
}

double ProfileBasis::grad_bracket(double e, double f, double eta) const {
  if (integer_path()) {
    if (n == 0) return 0.5 * f * std::exp(-eta * eta);
    auto prev = specfun::en_fn(n - 1, eta);
    // eta M(-n/2+1, 3/2, -eta^2)   = 2^{n-2} Gamma(n/2)     F_{n-1}(eta)
    // M(-n/2+1/2, 1/2, -eta^2)     = 2^{n-1} Gamma((n+1)/2) E_{n-1}(eta)
    double eta_m = std::pow(2.0, n - 2) * specfun::gamma_fn(n / 2.0) * prev.f;
    double m2 =
        std::pow(2.0, n - 1) * specfun::gamma_fn((n + 1) / 2.0) * prev.e;
    return e * alpha * eta_m + 0.5 * f * m2;
  }
  double t1 = 0.0;
  if (alpha != 0.0)
    t1 = alpha * eta *
         specfun::kummer_m({-alpha / 2.0 + 1.0, 1.5, -eta * eta});
  double t2 = specfun::kummer_m({-alpha / 2.0 + 0.5, 0.5, -eta * eta});
  return e * t1 + 0.5 * f * t2;
}

double ProfileBasis::u_half(double z) const {
  if (integer_path() && z < 400.0) {
    // U(n/2+1/2, 1/2, z) = 2^n sqrt(pi) e^z i^n erfc(sqrt(z))
    return std::pow(2.0, n) * kSqrtPi * std::exp(z) *
           specfun::inerfc(n, std::sqrt(z));
  }
  return specfun::kummer_u({alpha / 2.0 + 0.5, 0.5, z});
}

double ProfileBasis::m_pos_half(double z) const {
  return specfun::kummer_m({alpha / 2.0 + 0.5, 0.5, z});
}

double ProfileBasis::m_pos_one(double z) const {
  return specfun::kummer_m({alpha / 2.0 + 1.0, 1.5, z});
}

double profile_value(const ProfileBasis& bs, double e, double f, double d,
                     double x, double t) {
  double eta = x / (2.0 * std::sqrt(d * t));
  return std::pow(t, bs.alpha / 2.0) * (e * bs.phi0(eta) + f * bs.phi1(eta));
}

double profile_gradient(const ProfileBasis& bs, double e, double f, double d,
                        double x, double t) {
  double eta = x / (2.0 * std::sqrt(d * t));
  return std::pow(t, (bs.alpha - 1.0) / 2.0) / std::sqrt(d) *
         bs.grad_bracket(e, f, eta);
}

}  // namespace detail

double h0_threshold(const StefanProblem& p) {
  return std::pow(2.0, p.alpha) * specfun::gamma_fn(p.alpha / 2.0 + 1.0) *
         p.solid.k * p.t_i * std::pow(p.solid.d, (p.alpha - 1.0) / 2.0) /
         (p.t_inf * kSqrtPi);
}

double f1(double x, const StefanProblem& p) {
  if (x < 0.0) throw std::domain_error("f1: x must be nonnegative");
  double w = p.omega();
  double u = detail::ProfileBasis::for_problem(p).u_half(x * x * w * w);
  check_denominator(u, "f1");
  return 1.0 / u;
}

double f2(double x, const StefanProblem& p) {
  if (x < 0.0) throw std::domain_error("f2: x must be nonnegative");
  auto bs = detail::ProfileBasis::for_problem(p);
  double den = bs.m_pos_half(x * x) +
               2.0 * std::sqrt(p.liquid.d) * p.h0 / p.liquid.k * x *
                   bs.m_pos_one(x * x);
  check_denominator(den, "f2");
  return 1.0 / den;
}

double front_equation_lhs(double x, const StefanProblem& p) {
  auto [c1, c2] = front_terms(p);
  return -c1 * f1(x, p) + c2 * f2(x, p);
}

Coefficients coefficients_from_nu(double nu, const StefanProblem& p) {
  if (!(nu > 0.0)) throw std::domain_error("coefficients_from_nu: nu must be > 0");
  auto bs = detail::ProfileBasis::for_problem(p);
  double w = p.omega();

  double m0 = bs.phi0(nu);
  double p1 = bs.phi1(nu);
  double den_l = p.liquid.k * m0 + 2.0 * std::sqrt(p.liquid.d) * p.h0 * p1;
  check_denominator(den_l, "F_l");
  check_denominator(m0, "E_l");
  double f_l = -p.h0 * p.t_inf * 2.0 * std::sqrt(p.liquid.d) * m0 / den_l;
  double e_l = -p1 / m0 * f_l;

  double zs = nu * nu * w * w;
  double m0s = bs.phi0(nu * w);
  double p1s = bs.phi1(nu * w);
  double u = bs.u_half(zs);
  check_denominator(u, "F_s");
  check_denominator(m0s, "E_s");
  double f_s = -p.t_i * std::pow(2.0, p.alpha + 1.0) *
               std::pow(p.solid.d, p.alpha / 2.0) * bs.m_pos_half(zs) / u;
  double e_s = -p1s / m0s * f_s;

  return {e_l, f_l, e_s, f_s};
}

SimilaritySolution::SimilaritySolution(const StefanProblem& p, double nu,
                                       const Coefficients& c)
    : problem_(p),
      nu_(nu),
      coeffs_(c),
      basis_(detail::ProfileBasis::for_problem(p)) {
  if (!(nu > 0.0))
    throw ValidationError("SimilaritySolution: nu must be > 0");
}

double SimilaritySolution::omega() const { return problem_.omega(); }

double SimilaritySolution::front(double t) const {
  if (t < 0.0) throw std::domain_error("front: t must be nonnegative");
  return 2.0 * nu_ * std::sqrt(problem_.liquid.d * t);
}

double SimilaritySolution::front_velocity(double t) const {
  if (!(t > 0.0)) throw std::domain_error("front_velocity: t must be positive");
  return nu_ * std::sqrt(problem_.liquid.d / t);
}

double SimilaritySolution::liquid_temperature(double x, double t) const {
  if (!(t > 0.0)) throw std::domain_error("liquid_temperature: t must be positive");
  double s = front(t);
  double slack = 1e-12 * (s + std::sqrt(problem_.liquid.d * t));
  if (x < -slack || x > s + slack)
    throw std::domain_error(
        "liquid_temperature: x outside the liquid region [0, s(t)]");
  return detail::profile_value(basis_, coeffs_.e_l, coeffs_.f_l,
                               problem_.liquid.d, x, t);
}

double SimilaritySolution::solid_temperature(double x, double t) const {
  if (!(t > 0.0)) throw std::domain_error("solid_temperature: t must be positive");
  double s = front(t);
  double slack = 1e-12 * (s + std::sqrt(problem_.solid.d * t));
  if (x < s - slack)
    throw std::domain_error(
        "solid_temperature: x inside the liquid region x < s(t)");
  return detail::profile_value(basis_, coeffs_.e_s, coeffs_.f_s,
                               problem_.solid.d, x, t);
}

PhaseFluxes SimilaritySolution::fluxes(double x, double t) const {
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

ConductionSolution::ConductionSolution(const StefanProblem& p, double e_s,
                                       double f_s)
    : problem_(p),
      e_s_(e_s),
      f_s_(f_s),
      basis_(detail::ProfileBasis::for_problem(p)) {}

double ConductionSolution::temperature(double x, double t) const {
  if (!(t > 0.0)) throw std::domain_error("temperature: t must be positive");
  if (x < 0.0) throw std::domain_error("temperature: x must be nonnegative");
  return detail::profile_value(basis_, e_s_, f_s_, problem_.solid.d, x, t);
}

double ConductionSolution::flux(double x, double t) const {
  if (!(t > 0.0)) throw std::domain_error("flux: t must be positive");
  return problem_.solid.k *
         detail::profile_gradient(basis_, e_s_, f_s_, problem_.solid.d, x, t);
}

namespace {

ConductionSolution conduction_only(const StefanProblem& p) {
  double sd = std::sqrt(p.solid.d);
  double g_a1 = specfun::gamma_fn(p.alpha + 1.0);
  double g_half = specfun::gamma_fn((p.alpha + 1.0) / 2.0);
  double g_one = specfun::gamma_fn(p.alpha / 2.0 + 1.0);
  double den = p.solid.k * g_one + p.h0 * sd * g_half;
  check_denominator(den, "conduction E_s");
  double e_s = (-p.t_i * std::pow(p.solid.d, p.alpha / 2.0) * p.solid.k * g_a1 +
                g_half * p.h0 * sd * p.t_inf) /
               den;
  double f_s = 2.0 * sd * p.h0 * (e_s - p.t_inf) / p.solid.k;
  return {p, e_s, f_s};
}

// The E_n/F_n routing for integral alpha happens inside
// ProfileBasis::for_problem, so every evaluation below (f1, f2,
// coefficients) already follows the right path.
SolveOutcome solve_pipeline(const StefanProblem& p) {
  // Branch on the sign of LHS(0) = Delta_1 + Delta_2; equality (no melting
  // margin) also lands in the conduction regime.
  double lhs0 = front_equation_lhs(0.0, p);
  if (!(lhs0 > 0.0)) return conduction_only(p);

  auto [c1, c2] = front_terms(p);
  double delta1 = c1 * f1(0.0, p);
  roots::MonotoneRootSpec spec;
  spec.residual = [&p](double x) {
    return front_equation_lhs(x, p) - std::pow(x, p.alpha + 1.0);
  };
  spec.x_init_hi = 1.0;
  spec.tol_abs = 1e-12;
  spec.tol_res = 1e-10 * (1.0 + std::abs(delta1) + std::abs(c2));
  double nu = roots::solve_monotone(spec);

  // The Stefan-balance residual equals the front-equation residual divided
  // by nu^{alpha+1}, so small fronts need the root driven well below the
  // default residual tolerance.  Polish until the balance defect sits near
  // the evaluation-noise floor.
  double rhs_root = std::pow(nu, p.alpha + 1.0);
  double noise_floor =
      2e-14 * (std::abs(delta1) + std::abs(c2) + rhs_root);
  double polish_res = std::max(1e-9 * rhs_root, noise_floor);
  if (polish_res < spec.tol_res) {
    roots::MonotoneRootSpec fine = spec;
    fine.x_init_hi = 2.0 * nu;
    fine.tol_abs = 1e-15 * std::max(nu, 1e-3);
    fine.tol_res = polish_res;
    nu = roots::solve_monotone(fine);
  }
  return SimilaritySolution(p, nu, coefficients_from_nu(nu, p));
}

}  // namespace

SolveOutcome solve(const StefanProblem& p) {
  p.validate();
  if (p.integer_alpha()) return solve_integer_alpha(p);
  return solve_pipeline(p);
}

SolveOutcome solve_integer_alpha(const StefanProblem& p) {
  p.validate();
  if (!p.integer_alpha())
    throw ValidationError("solve_integer_alpha: alpha must be integral");
  return solve_pipeline(p);
}

}  // namespace stefan
