#include "stefan/verification.hpp"

#include <algorithm>
#include <cmath>

#include "stefan/oracle_fd.hpp"
#include "stefan/specfun.hpp"

namespace stefan::verify {

namespace {

constexpr double kPdeTol = 1e-5;        // of max |psi| per phase
constexpr double kInterfaceTol = 1e-9;  // of the temperature scale
constexpr double kStefanTol = 1e-7;     // relative
constexpr double kConvectiveTol = 1e-8; // of the boundary-flux scale
constexpr double kInitialTol = 1e-5;    // relative
constexpr double kOracleTol = 2e-2;     // relative on nu

const double kCheckTimes[] = {0.1, 1.0, 10.0};

Check make(const std::string& name, double measured, double tol) {
  return {name, measured, tol, measured <= tol};
}

// max |psi_t - d psi_xx| by central differences over an (x,t) grid strictly
// inside one phase, normalized by max |psi| afterwards.
template <typename Eval>
std::pair<double, double> pde_residual(Eval&& eval, double d, double t_lo,
                                       double t_hi, auto&& x_range) {
  double worst = 0.0, scale = 0.0;
  const int nt = 50, nxp = 50;
  for (int i = 0; i < nt; ++i) {
    double t = t_lo + (t_hi - t_lo) * i / (nt - 1.0);
    auto [x_lo, x_hi] = x_range(t);
    if (!(x_hi > x_lo)) continue;
    double ht = 1e-4 * t;
    for (int j = 0; j < nxp; ++j) {
      double x = x_lo + (x_hi - x_lo) * j / (nxp - 1.0);
      double hx = std::min(1e-4 * std::sqrt(d * t), 0.25 * (x_hi - x_lo));
      double p0 = eval(x, t);
      double pt = (eval(x, t + ht) - eval(x, t - ht)) / (2.0 * ht);
      double pxx =
          (eval(x + hx, t) - 2.0 * p0 + eval(x - hx, t)) / (hx * hx);
      worst = std::max(worst, std::abs(pt - d * pxx));
      scale = std::max(scale, std::abs(p0));
    }
  }
  return {worst, scale};
}

}  // namespace

bool all_pass(const std::vector<Check>& checks) {
  return std::all_of(checks.begin(), checks.end(),
                     [](const Check& c) { return c.pass; });
}

std::vector<Check> residual_suite(const SimilaritySolution& sol) {
  const auto& p = sol.problem();
  std::vector<Check> out;

  // heat equation, liquid phase (2% margins off the boundaries)
  {
    auto [worst, scale] = pde_residual(
        [&](double x, double t) { return sol.liquid_temperature(x, t); },
        p.liquid.d, 0.3, 3.0, [&](double t) {
          double s = sol.front(t);
          return std::pair{0.02 * s, 0.98 * s};
        });
    out.push_back(make("pde_residual_liquid", worst / std::max(scale, 1e-300),
                       kPdeTol));
  }
  // heat equation, solid phase
  {
    auto [worst, scale] = pde_residual(
        [&](double x, double t) { return sol.solid_temperature(x, t); },
        p.solid.d, 0.3, 3.0, [&](double t) {
          double s = sol.front(t);
          return std::pair{1.02 * s, 1.02 * s + 4.0 * std::sqrt(p.solid.d * t)};
        });
    out.push_back(make("pde_residual_solid", worst / std::max(scale, 1e-300),
                       kPdeTol));
  }

  // interface, Stefan balance, convective condition at the check times
  double worst_interface = 0.0, worst_stefan = 0.0, worst_convective = 0.0;
  const auto& c = sol.coefficients();
  for (double t : kCheckTimes) {
    double s = sol.front(t);
    double temp_scale =
        std::pow(t, p.alpha / 2.0) *
        (std::abs(c.e_l) + std::abs(c.f_l) + std::abs(c.e_s) + std::abs(c.f_s) +
         p.t_inf);
    worst_interface = std::max(
        worst_interface, std::abs(sol.liquid_temperature(s, t)) / temp_scale);
    worst_interface = std::max(
        worst_interface, std::abs(sol.solid_temperature(s, t)) / temp_scale);

    auto flux = sol.fluxes(s, t);
    double rhs = p.gamma * std::pow(s, p.alpha) * sol.front_velocity(t);
    worst_stefan = std::max(
        worst_stefan, std::abs(flux.solid - flux.liquid - rhs) / std::abs(rhs));

    double ambient = p.t_inf * std::pow(t, p.alpha / 2.0);
    double surface = sol.liquid_temperature(0.0, t);
    double lhs_flux = sol.fluxes(0.0, t).liquid;
    double rhs_flux = p.h0 / std::sqrt(t) * (surface - ambient);
    double flux_scale = std::abs(lhs_flux) +
                        p.h0 / std::sqrt(t) * (std::abs(surface) + ambient) +
                        1e-300;
    worst_convective =
        std::max(worst_convective, std::abs(lhs_flux - rhs_flux) / flux_scale);
  }
  out.push_back(make("interface_zero", worst_interface, kInterfaceTol));
  out.push_back(make("stefan_balance", worst_stefan, kStefanTol));
  out.push_back(make("convective_condition", worst_convective, kConvectiveTol));

  // initial condition: psi_s(x, t->0) -> -t_i x^alpha
  double worst_initial = 0.0;
  for (double x : {0.5, 1.0, 2.0}) {
    double want = -p.t_i * std::pow(x, p.alpha);
    double got = sol.solid_temperature(x, 1e-8);
    worst_initial = std::max(worst_initial, std::abs(got - want) / std::abs(want));
  }
  out.push_back(make("initial_condition", worst_initial, kInitialTol));

  return out;
}

std::vector<Check> conduction_suite(const ConductionSolution& sol) {
  const auto& p = sol.problem();
  std::vector<Check> out;
  double e_s = sol.e_s(), f_s = sol.f_s();
  double sd = std::sqrt(p.solid.d);
  double scale = std::abs(e_s) + std::abs(f_s) + p.t_inf + p.t_i;

  // Robin relation k_s F_s / (2 sqrt(d_s)) = h0 (E_s - T_inf)
  double robin =
      std::abs(p.solid.k * f_s / (2.0 * sd) - p.h0 * (e_s - p.t_inf));
  out.push_back(make("coefficient_robin_relation",
                     robin / (p.h0 * scale + 1e-300), 1e-8));

  // t -> 0 limit: E_s / Gamma((alpha+1)/2) + F_s / (2 Gamma(alpha/2+1))
  //             = -t_i (4 d_s)^{alpha/2} / sqrt(pi)
  double lim = e_s / specfun::gamma_fn((p.alpha + 1.0) / 2.0) +
               f_s / (2.0 * specfun::gamma_fn(p.alpha / 2.0 + 1.0));
  double want = -p.t_i * std::pow(4.0 * p.solid.d, p.alpha / 2.0) /
                std::sqrt(std::acos(-1.0));
  out.push_back(
      make("coefficient_initial_relation", std::abs(lim - want) / std::abs(want),
           1e-8));

  // direct residuals of the boundary and initial conditions
  double worst_bc = 0.0;
  for (double t : kCheckTimes) {
    double ambient = p.t_inf * std::pow(t, p.alpha / 2.0);
    double surface = sol.temperature(0.0, t);
    double lhs = sol.flux(0.0, t);
    double rhs = p.h0 / std::sqrt(t) * (surface - ambient);
    double fscale =
        std::abs(lhs) + p.h0 / std::sqrt(t) * (std::abs(surface) + ambient);
    worst_bc = std::max(worst_bc, std::abs(lhs - rhs) / (fscale + 1e-300));
  }
  out.push_back(make("convective_condition", worst_bc, 1e-8));

  double worst_initial = 0.0;
  for (double x : {0.5, 1.0, 2.0}) {
    double want_t = -p.t_i * std::pow(x, p.alpha);
    double got = sol.temperature(x, 1e-8);
    worst_initial =
        std::max(worst_initial, std::abs(got - want_t) / std::abs(want_t));
  }
  out.push_back(make("initial_condition", worst_initial, kInitialTol));
  return out;
}

Check oracle_check(const SimilaritySolution& sol, int nx) {
  const auto& p = sol.problem();
  double t_end = 1.0;
  double s_end = sol.front(t_end);
  oracle::GridConfig grid;
  grid.t_start = 0.01;
  grid.t_end = t_end;
  grid.nx = nx;
  grid.x_max = s_end + 7.0 * std::sqrt(p.solid.d * t_end);
  grid.cfl = 0.4;
  // keep the warm-start front resolvable on coarse grids
  double dx = grid.x_max / (nx - 1);
  while (sol.front(grid.t_start) < 4.5 * dx && grid.t_start < 0.2 * t_end)
    grid.t_start *= 2.0;
  auto run = oracle::run_oracle(p, grid);
  double err = std::abs(run.nu_fit - sol.nu()) / sol.nu();
  return {"oracle_nu_agreement", err, kOracleTol, err <= kOracleTol};
}

}  // namespace stefan::verify
