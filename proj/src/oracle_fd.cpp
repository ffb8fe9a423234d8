#include "stefan/oracle_fd.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "stefan/errors.hpp"

namespace stefan::oracle {

namespace {

// One-sided gradient at the interface from the quadratic through (x0,f0),
// (x1,f1) and (s,0), where r0/r1 are the node distances from s (r0 > r1 >=
// one cell, so the weights stay well conditioned for every front position).
// Returns the derivative along increasing distance from s; the caller fixes
// the orientation.
double interface_gradient(double f0, double r0, double f1, double r1) {
  double dx = r0 - r1;
  return f0 * r1 / (dx * r0) - f1 * r0 / (dx * r1);
}

// Lagrange quadratic through (x0,f0), (x1,f1), (xs,0) evaluated at xq.
double quad_interp(double x0, double f0, double x1, double f1, double xs,
                   double xq) {
  double l0 = (xq - x1) * (xq - xs) / ((x0 - x1) * (x0 - xs));
  double l1 = (xq - x0) * (xq - xs) / ((x1 - x0) * (x1 - xs));
  return f0 * l0 + f1 * l1;
}

struct FrontNodes {
  int j_liq;  // last node strictly left of s
  int j_sol;  // first node right of s with at least a hair of clearance
};

FrontNodes locate_front(double s, double dx) {
  int j_liq = static_cast<int>(std::floor(s / dx));
  if (j_liq * dx >= s) --j_liq;
  int j_sol = j_liq + 1;
  if (j_sol * dx - s < 1e-9 * dx) ++j_sol;
  return {j_liq, j_sol};
}

}  // namespace

void GridConfig::validate() const {
  if (nx < 200) throw ValidationError("grid nx must be >= 200");
  if (!(cfl > 0.0) || cfl > 0.4)
    throw ValidationError("grid cfl must be in (0, 0.4]");
  if (!(t_start > 0.0)) throw ValidationError("grid t_start must be > 0");
  if (!(t_end > t_start)) throw ValidationError("grid t_end must exceed t_start");
  if (!(x_max > 0.0)) throw ValidationError("grid x_max must be > 0");
}

OracleRun run_oracle(const StefanProblem& p, const GridConfig& grid) {
  grid.validate();
  auto outcome = solve(p);
  const auto* exact = std::get_if<SimilaritySolution>(&outcome);
  if (exact == nullptr)
    throw ValidationError("run_oracle: problem is below the melting threshold");

  const double dl = p.liquid.d, ds = p.solid.d;
  const double kl = p.liquid.k, ks = p.solid.k;
  const int nx = grid.nx;
  const double dx = grid.x_max / (nx - 1);
  const double dmax = std::max(dl, ds);

  double t = grid.t_start;
  double s = exact->front(t);
  if (s < 4.0 * dx)
    throw ValidationError("run_oracle: front under-resolved at t_start");

  std::vector<double> psi(nx), next(nx);
  for (int j = 0; j < nx; ++j) {
    double x = j * dx;
    psi[j] = (x < s) ? exact->liquid_temperature(x, t)
                     : exact->solid_temperature(x, t);
  }
  const double far_value = -p.t_i * std::pow(grid.x_max, p.alpha);

  OracleRun run;
  run.max_balance_residual = 0.0;

  double dt_est = grid.cfl * dx * dx / dmax;
  long est_steps = static_cast<long>((grid.t_end - grid.t_start) / dt_est) + 1;
  int stride = static_cast<int>(std::max(1L, est_steps / 4000));
  run.front_trajectory.reserve(4200);
  run.front_trajectory.emplace_back(t, s);

  std::vector<double> snapshot_times;
  for (int i = 1; i <= 5; ++i)
    snapshot_times.push_back(grid.t_start +
                             i * (grid.t_end - grid.t_start) / 5.0);
  std::size_t next_snapshot = 0;

  const double psi_low = -p.t_i * std::pow(grid.x_max, p.alpha) * 1.01 - 1e-12;
  const double psi_high =
      p.t_inf * std::pow(grid.t_end, p.alpha / 2.0) * 1.01 + 1e-12;

  long step = 0;
  while (t < grid.t_end * (1.0 - 1e-15)) {
    auto [j_liq, j_sol] = locate_front(s, dx);
    if (j_liq < 3) throw NumericalError("run_oracle: front ran into x = 0");
    if (s > 0.8 * grid.x_max || j_sol > nx - 4)
      throw NumericalError("run_oracle: front exited the grid (s > 0.8 x_max)");

    // Interface gradients from the two regular nodes on each side (the
    // nearest node is interpolation-maintained and is skipped).
    double gl = interface_gradient(psi[j_liq - 2], s - (j_liq - 2) * dx,
                                   psi[j_liq - 1], s - (j_liq - 1) * dx);
    double gs = -interface_gradient(psi[j_sol + 2], (j_sol + 2) * dx - s,
                                    psi[j_sol + 1], (j_sol + 1) * dx - s);

    double sdot = (ks * gs - kl * gl) / (p.gamma * std::pow(s, p.alpha));

    double robin = p.h0 / (kl * std::sqrt(t));
    double dt = grid.cfl * dx * dx / (dmax * (1.0 + dx * robin));
    dt = std::min(dt, 0.4 * dx / std::max(std::abs(sdot), 1e-30));
    dt = std::min(dt, grid.t_end - t);

    double lam_l = dl * dt / (dx * dx);
    double lam_s = ds * dt / (dx * dx);
    {
      double ambient = p.t_inf * std::pow(t, p.alpha / 2.0);
      double ghost = psi[1] - 2.0 * dx * robin * (psi[0] - ambient);
      next[0] = psi[0] + lam_l * (ghost - 2.0 * psi[0] + psi[1]);
    }
    for (int j = 1; j <= j_liq - 1; ++j)
      next[j] = psi[j] + lam_l * (psi[j - 1] - 2.0 * psi[j] + psi[j + 1]);
    for (int j = j_sol + 1; j < nx - 1; ++j)
      next[j] = psi[j] + lam_s * (psi[j - 1] - 2.0 * psi[j] + psi[j + 1]);
    next[nx - 1] = far_value;

    double s_new = s + sdot * dt;
    double t_new = t + dt;

    // Re-classify against the moved front.  Nodes between the regular bands
    // (the new near-front nodes plus anything the front crossed) are rebuilt
    // by quadratic interpolation against the interface value 0.
    auto [j_liq_new, j_sol_new] = locate_front(s_new, dx);
    if (j_liq_new < 3 || j_sol_new > nx - 4)
      throw NumericalError("run_oracle: front left the resolvable band");

    int jb = std::min(j_liq, j_liq_new);  // liquid-side anchor, PDE-updated
    for (int j = jb; j < j_sol_new; ++j)
      next[j] = quad_interp((jb - 2) * dx, next[jb - 2], (jb - 1) * dx,
                            next[jb - 1], s_new, j * dx);
    int jt = std::max(j_sol, j_sol_new);  // solid-side anchor
    for (int j = j_sol_new; j <= jt; ++j)
      next[j] = quad_interp((jt + 2) * dx, next[jt + 2], (jt + 1) * dx,
                            next[jt + 1], s_new, j * dx);

    double balance =
        std::abs(ks * gs - kl * gl - p.gamma * std::pow(s, p.alpha) * sdot) /
        (std::abs(ks * gs) + std::abs(kl * gl) + 1e-300);
    run.max_balance_residual = std::max(run.max_balance_residual, balance);

    psi.swap(next);
    t = t_new;
    s = s_new;
    ++step;

    if (step % stride == 0 || t >= grid.t_end * (1.0 - 1e-15))
      run.front_trajectory.emplace_back(t, s);

    if (step % 64 == 0 || t >= grid.t_end * (1.0 - 1e-15)) {
      for (int j = 0; j < nx; ++j)
        if (!std::isfinite(psi[j]) || psi[j] < psi_low || psi[j] > psi_high)
          throw NumericalError(
              "run_oracle: stability violation (temperature out of bounds)");
    }

    while (next_snapshot < snapshot_times.size() &&
           t >= snapshot_times[next_snapshot]) {
      for (int j = 0; j < nx; j += std::max(1, nx / 64))
        run.temp_snapshots.push_back({j * dx, t, psi[j]});
      ++next_snapshot;
    }
  }

  // fit s = 2 nu sqrt(d_l t) through the marched trajectory
  double num = 0.0, den = 0.0;
  for (const auto& [ti, si] : run.front_trajectory) {
    double u = 2.0 * std::sqrt(dl * ti);
    num += si * u;
    den += u * u;
  }
  run.nu_fit = num / den;
  return run;
}

}  // namespace stefan::oracle
