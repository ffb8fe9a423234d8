#include <doctest.h>

#include <cmath>
#include <random>
#include <variant>

#include "alpha0_reference.hpp"
#include "oracles.hpp"
#include "stefan/errors.hpp"
#include "stefan/model.hpp"
#include "stefan/specfun.hpp"
#include "stefan/verification.hpp"

using namespace stefan;

namespace {

constexpr double kSqrtPi = 1.7724538509055160273;

StefanProblem all_ones(double alpha, double h0) {
  return {alpha, 1.0, 1.0, 1.0, h0, {1.0, 1.0}, {1.0, 1.0}};
}

const SimilaritySolution& two_phase(const SolveOutcome& o) {
  return std::get<SimilaritySolution>(o);
}

}  // namespace

TEST_CASE("h0_threshold") {
  // alpha = 0 reduction: k_s t_i / (t_inf sqrt(pi d_s))
  StefanProblem p{0.0, 2.0, 0.7, 1.3, 1.0, {1.0, 1.0}, {1.8, 0.6}};
  double want = p.solid.k * p.t_i / (p.t_inf * std::sqrt(kSqrtPi * kSqrtPi * p.solid.d));
  CHECK(std::abs(h0_threshold(p) - want) < 1e-14 * want);

  CHECK(std::abs(h0_threshold(all_ones(0.0, 1.0)) - 1.0 / kSqrtPi) < 1e-14);
  // alpha = 1: 2 Gamma(3/2)/sqrt(pi) = 1
  CHECK(std::abs(h0_threshold(all_ones(1.0, 1.0)) - 1.0) < 1e-14);
}

TEST_CASE("f1: values at zero and monotone growth") {
  CHECK(std::abs(f1(0.0, all_ones(0.0, 1.0)) - 1.0 / kSqrtPi) < 1e-13);
  // alpha = 2: Gamma(2)/sqrt(pi)
  CHECK(std::abs(f1(0.0, all_ones(2.0, 1.0)) -
                 specfun::gamma_fn(2.0) / kSqrtPi) < 1e-13);

  StefanProblem p = all_ones(0.8, 1.0);  // omega = 1
  double prev = 0.0;
  for (double x : {0.5, 1.0, 1.5}) {
    double v = f1(x, p);
    CHECK(v > prev);
    prev = v;
    // against the quadrature-backed U oracle
    double want = 1.0 / oracles::kummer_u_quadrature(0.9, 0.5, x * x);
    CHECK(std::abs(v - want) < 1e-8 * want);
  }
}

TEST_CASE("f2: values at zero and monotone decay") {
  CHECK(f2(0.0, all_ones(1.7, 3.0)) == 1.0);
  // alpha=0, x=1, d_l=1, h0/k_l=1: 1/[M(1/2,1/2,1) + 2 M(1,3/2,1)], the first
  // M being e
  StefanProblem p = all_ones(0.0, 1.0);
  double want = 1.0 / (std::exp(1.0) +
                       2.0 * oracles::kummer_m_series(1.0, 1.5, 1.0));
  CHECK(std::abs(f2(1.0, p) - want) < 1e-12);

  double prev = 2.0;
  for (double x : {0.3, 0.6, 0.9}) {
    double v = f2(x, all_ones(1.2, 2.0));
    CHECK(v < prev);
    prev = v;
  }
}

TEST_CASE("front_equation_lhs: endpoints and alpha=0 reduction") {
  StefanProblem p = all_ones(1.4, 2.5);
  // LHS(0) = Delta_1 + Delta_2
  double delta1 = -p.solid.k * p.t_i / p.gamma *
                  specfun::gamma_fn(p.alpha / 2.0 + 1.0) / kSqrtPi;
  double delta2 = p.h0 * p.t_inf / (p.gamma * std::pow(2.0, p.alpha));
  CHECK(std::abs(front_equation_lhs(0.0, p) - (delta1 + delta2)) <
        1e-12 * (std::abs(delta1) + delta2));

  // threshold equality makes LHS(0) = 0
  StefanProblem q = all_ones(0.9, 1.0);
  q.h0 = h0_threshold(q);
  CHECK(std::abs(front_equation_lhs(0.0, q)) < 1e-13);

  // alpha = 0 LHS equals the erf/erfc closed form term by term
  StefanProblem r = all_ones(0.0, 10.0);
  CHECK(std::abs(front_equation_lhs(0.4, r) - alpha0::front_lhs(0.4, r)) <
        1e-10);
}

TEST_CASE("coefficients_from_nu: defining relations") {
  StefanProblem p = all_ones(1.3, 4.0);
  double nu = 0.41;  // any positive value; the relations hold identically
  auto c = coefficients_from_nu(nu, p);
  auto bs = detail::ProfileBasis::for_problem(p);

  // interface: E_l phi0(nu) + F_l phi1(nu) = 0
  double iface = c.e_l * bs.phi0(nu) + c.f_l * bs.phi1(nu);
  CHECK(std::abs(iface) < 1e-14 * (std::abs(c.e_l) + std::abs(c.f_l)));
  // convective: k_l F_l / (2 sqrt(d_l)) = h0 (E_l - t_inf)
  double conv = p.liquid.k * c.f_l / (2.0 * std::sqrt(p.liquid.d)) -
                p.h0 * (c.e_l - p.t_inf);
  CHECK(std::abs(conv) < 1e-12 * p.h0 * (std::abs(c.e_l) + p.t_inf));
  // solid interface
  double w = p.omega();
  double iface_s = c.e_s * bs.phi0(nu * w) + c.f_s * bs.phi1(nu * w);
  CHECK(std::abs(iface_s) < 1e-13 * (std::abs(c.e_s) + std::abs(c.f_s)));
  CHECK(c.f_l < 0.0);
}

TEST_CASE("solve alpha=0: nu and profiles against the closed forms") {
  StefanProblem p = all_ones(0.0, 10.0);
  auto sol = two_phase(solve(p));
  double nu_ref = alpha0::solve_nu(p);
  CHECK(std::abs(sol.nu() - nu_ref) < 1e-10);

  // liquid profile at x = 0 and at interior points
  for (double t : {0.3, 1.0, 4.0})
    for (double frac : {0.0, 0.3, 0.7, 1.0}) {
      double x = frac * sol.front(t);
      double want = alpha0::psi_liquid(x, t, nu_ref, p);
      CHECK(std::abs(sol.liquid_temperature(x, t) - want) < 1e-9);
    }
  // the (x, t) = (0.1, 1) spot value in particular
  CHECK(std::abs(sol.liquid_temperature(0.1, 1.0) -
                 alpha0::psi_liquid(0.1, 1.0, nu_ref, p)) < 1e-9);
  // solid profile
  for (double t : {0.3, 1.0, 4.0})
    for (double mult : {1.0, 1.5, 3.0}) {
      double x = mult * sol.front(t);
      double want = alpha0::psi_solid(x, t, nu_ref, p);
      CHECK(std::abs(sol.solid_temperature(x, t) - want) < 1e-9);
      CHECK(sol.solid_temperature(x, t) <= 0.0);
    }
}

TEST_CASE("eval: interface zeros, self-similarity, initial condition") {
  StefanProblem p = all_ones(0.8, 3.0);
  auto sol = two_phase(solve(p));
  for (double t : {0.1, 1.0, 10.0}) {
    double s = sol.front(t);
    CHECK(std::abs(sol.liquid_temperature(s, t)) <
          1e-9 * p.t_inf * std::pow(t, p.alpha / 2.0));
    CHECK(std::abs(sol.solid_temperature(s, t)) <
          1e-9 * p.t_i * std::pow(t, p.alpha / 2.0));
  }
  // self-similarity: psi(lambda x, lambda^2 t) = lambda^alpha psi(x, t)
  double lam = 2.0;
  double x = 0.4 * sol.front(1.0);
  CHECK(std::abs(sol.liquid_temperature(lam * x, lam * lam) -
                 std::pow(lam, p.alpha) * sol.liquid_temperature(x, 1.0)) <
        1e-12);
  // initial condition at tiny t
  for (double xx : {0.5, 1.0, 2.0}) {
    double want = -p.t_i * std::pow(xx, p.alpha);
    CHECK(std::abs(sol.solid_temperature(xx, 1e-8) - want) <
          1e-6 * std::abs(want));
  }
  // domain guards
  CHECK_THROWS_AS(sol.liquid_temperature(sol.front(1.0) * 1.5, 1.0),
                  std::domain_error);
  CHECK_THROWS_AS(sol.solid_temperature(sol.front(1.0) * 0.5, 1.0),
                  std::domain_error);
  CHECK_THROWS_AS(sol.liquid_temperature(0.1, 0.0), std::domain_error);
}

TEST_CASE("front and fluxes: Stefan balance and finite differences") {
  CHECK(two_phase(solve(all_ones(0.0, 10.0))).front(0.0) == 0.0);

  for (double alpha : {0.0, 0.7, 2.2}) {
    StefanProblem p = all_ones(alpha, alpha == 0.0 ? 10.0 : 0.0);
    if (alpha != 0.0) p.h0 = 4.0 * h0_threshold(p);
    auto sol = two_phase(solve(p));
    for (double t : {0.5, 1.0}) {
      double s = sol.front(t);
      auto fl = sol.fluxes(s, t);
      double rhs = p.gamma * std::pow(s, p.alpha) * sol.front_velocity(t);
      CHECK(std::abs(fl.solid - fl.liquid - rhs) < 1e-8 * std::abs(rhs));
    }
    // flux formulas against central differences, step 1e-5
    double t = 1.0, h = 1e-5;
    double xl = 0.5 * sol.front(t);
    double fd_l = p.liquid.k *
                  (sol.liquid_temperature(xl + h, t) -
                   sol.liquid_temperature(xl - h, t)) /
                  (2.0 * h);
    CHECK(std::abs(sol.fluxes(xl, t).liquid - fd_l) <
          1e-6 * std::max(1.0, std::abs(fd_l)));
    double xs = sol.front(t) + 0.5 * std::sqrt(p.solid.d * t);
    double fd_s = p.solid.k *
                  (sol.solid_temperature(xs + h, t) -
                   sol.solid_temperature(xs - h, t)) /
                  (2.0 * h);
    CHECK(std::abs(sol.fluxes(xs, t).solid - fd_s) <
          1e-6 * std::max(1.0, std::abs(fd_s)));
  }
}

TEST_CASE("solve: branch selection") {
  StefanProblem p = all_ones(1.1, 1.0);
  p.h0 = 0.99 * h0_threshold(p);
  CHECK(std::holds_alternative<ConductionSolution>(solve(p)));
  p.h0 = 1.01 * h0_threshold(p);
  CHECK(std::holds_alternative<SimilaritySolution>(solve(p)));
  // at the computed threshold LHS(0) is zero up to rounding; whichever side
  // it lands on, the branch must agree with it
  p.h0 = h0_threshold(p);
  CHECK(std::holds_alternative<SimilaritySolution>(solve(p)) ==
        (front_equation_lhs(0.0, p) > 0.0));

  // branch decision == sign of LHS(0) on randomized instances
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> du(0.5, 2.0);
  std::uniform_real_distribution<double> da(0.0, 3.0);
  std::uniform_real_distribution<double> dm(0.2, 5.0);
  for (int i = 0; i < 50; ++i) {
    StefanProblem q{da(rng), du(rng), du(rng), du(rng), 1.0,
                    {du(rng), du(rng)}, {du(rng), du(rng)}};
    q.h0 = dm(rng) * h0_threshold(q);
    bool melting = front_equation_lhs(0.0, q) > 0.0;
    CHECK(std::holds_alternative<SimilaritySolution>(solve(q)) == melting);
  }
}

TEST_CASE("conduction regime: closed-form coefficients") {
  StefanProblem p = all_ones(1.6, 1.0);
  p.h0 = 0.5 * h0_threshold(p);
  auto cond = std::get<ConductionSolution>(solve(p));
  auto checks = verify::conduction_suite(cond);
  for (const auto& c : checks) {
    INFO(c.name, " measured=", c.measured, " tol=", c.tolerance);
    CHECK(c.pass);
  }
}

TEST_CASE("solve_integer_alpha: n=0 equals the closed forms") {
  StefanProblem p = all_ones(0.0, 10.0);
  auto sol = two_phase(solve_integer_alpha(p));
  double nu_ref = alpha0::solve_nu(p);
  CHECK(std::abs(sol.nu() - nu_ref) < 1e-10);
  CHECK(std::abs(sol.liquid_temperature(0.0, 1.0) -
                 alpha0::psi_liquid(0.0, 1.0, nu_ref, p)) < 1e-11);
  CHECK(std::abs(sol.solid_temperature(2.0 * sol.front(1.0), 1.0) -
                 alpha0::psi_solid(2.0 * sol.front(1.0), 1.0, nu_ref, p)) <
        1e-11);
  CHECK_THROWS_AS(solve_integer_alpha(all_ones(0.5, 10.0)), ValidationError);
}

TEST_CASE("integer seam: nu continuous across integral alpha") {
  for (int n : {0, 1, 2, 3}) {
    StefanProblem p = all_ones(static_cast<double>(n), 1.0);
    p.h0 = 3.0 * h0_threshold(p);
    double nu_n = two_phase(solve(p)).nu();
    for (double d : {1e-4, -1e-4}) {
      if (n == 0 && d < 0.0) continue;  // alpha >= 0
      StefanProblem q = p;
      q.alpha = n + d;
      double nu_q = two_phase(solve(q)).nu();
      CHECK(std::abs(nu_q - nu_n) <= 1e-3);
    }
  }
}

TEST_CASE("integer path: profiles match the erfc-family closed forms") {
  // For integral exponents the temperatures collapse to explicit expressions
  // in E_n/F_n alone; evaluate those directly and compare with the
  // coefficient-based path.
  for (int n : {1, 2}) {
    StefanProblem p = all_ones(static_cast<double>(n), 1.0);
    p.h0 = 4.0 * h0_threshold(p);
    auto sol = two_phase(solve_integer_alpha(p));
    double nu = sol.nu(), w = p.omega();
    auto G = [](double x) { return specfun::gamma_fn(x); };
    auto En = [n](double z) { return specfun::en_fn(n, z).e; };
    auto Fn = [n](double z) { return specfun::en_fn(n, z).f; };
    for (double t : {0.4, 1.7}) {
      double s = sol.front(t);
      for (double frac : {0.25, 0.8}) {
        double x = frac * s;
        double eta = x / (2.0 * std::sqrt(p.liquid.d * t));
        double want =
            -std::pow(t, n / 2.0) * std::pow(2.0, n) * p.h0 * p.t_inf *
            std::sqrt(p.liquid.d) * G(n / 2.0 + 0.5) * G(n / 2.0 + 1.0) *
            (Fn(eta) * En(nu) - Fn(nu) * En(eta)) /
            (p.liquid.k * G(n / 2.0 + 1.0) * En(nu) +
             std::sqrt(p.liquid.d) * p.h0 * G(n / 2.0 + 0.5) * Fn(nu));
        CHECK(std::abs(sol.liquid_temperature(x, t) - want) <
              1e-12 * (std::abs(want) + 1.0));
      }
      for (double mult : {1.2, 2.5}) {
        double x = mult * s;
        double eta = x / (2.0 * std::sqrt(p.solid.d * t));
        double want = std::pow(t, n / 2.0) * std::pow(2.0, n) * p.t_i *
                      std::pow(p.solid.d, n / 2.0) * G(n + 1.0) *
                      (En(eta) * Fn(nu * w) - En(nu * w) * Fn(eta)) /
                      (En(nu * w) - Fn(nu * w));
        CHECK(std::abs(sol.solid_temperature(x, t) - want) <
              1e-12 * (std::abs(want) + 1.0));
      }
    }
  }
}

TEST_CASE("two-phase signs: melt positive, solid negative") {
  StefanProblem p = all_ones(0.8, 3.0);
  auto sol = two_phase(solve(p));
  for (double t : {0.2, 1.0, 5.0}) {
    double s = sol.front(t);
    for (double frac : {0.05, 0.4, 0.9})
      CHECK(sol.liquid_temperature(frac * s, t) > 0.0);
    for (double mult : {1.1, 2.0, 5.0})
      CHECK(sol.solid_temperature(mult * s, t) < 0.0);
  }
}

TEST_CASE("integer path: small-time limit of t^{n/2} E_n(eta)") {
  // t^{n/2} E_n(x / (2 sqrt(d_s t))) -> x^n / (Gamma(n+1) 2^n d_s^{n/2})
  int n = 2;
  double x = 1.0, ds = 1.3;
  double want = std::pow(x, n) /
                (specfun::gamma_fn(n + 1.0) * std::pow(2.0, n) *
                 std::pow(ds, n / 2.0));
  double t = 1e-10;
  double eta = x / (2.0 * std::sqrt(ds * t));
  double got = std::pow(t, n / 2.0) * specfun::en_fn(n, eta).e;
  CHECK(std::abs(got - want) < 1e-5 * want);
}

TEST_CASE("residual suite: randomized two-phase instances") {
  StefanProblem p = all_ones(0.8, 3.0);
  auto sol = two_phase(solve(p));
  auto checks = verify::residual_suite(sol);
  for (const auto& c : checks) {
    INFO(c.name, " measured=", c.measured, " tol=", c.tolerance);
    CHECK(c.pass);
  }
}

TEST_CASE("nu increases with h0") {
  StefanProblem p = all_ones(1.3, 1.0);
  double threshold = h0_threshold(p);
  double prev = 0.0;
  for (double mult : {1.5, 2.0, 3.0, 5.0, 8.0}) {
    p.h0 = mult * threshold;
    double nu = two_phase(solve(p)).nu();
    CHECK(nu > prev);
    prev = nu;
  }
}

TEST_CASE("validation errors name the field") {
  StefanProblem p = all_ones(1.0, 1.0);
  p.gamma = -1.0;
  CHECK_THROWS_WITH_AS(solve(p), "gamma must be > 0", ValidationError);
  p = all_ones(-0.5, 1.0);
  CHECK_THROWS_WITH_AS(solve(p), "alpha must be >= 0", ValidationError);
}
