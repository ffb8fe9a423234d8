#pragma once

#include <utility>
#include <vector>

#include "stefan/model.hpp"

namespace stefan::oracle {

struct GridConfig {
  double x_max;    // domain length, m
  int nx;          // spatial nodes (>= 200)
  double t_end;    // horizon, s
  double cfl = 0.4;
  double t_start;  // warm-start time (> 0); the similarity profile at t_start
                   // seeds the march, which then runs independently
  void validate() const;
};

struct OracleRun {
  struct Sample {
    double x;
    double t;
    double psi;
  };
  std::vector<std::pair<double, double>> front_trajectory;  // (t, s_num(t))
  std::vector<Sample> temp_snapshots;
  double nu_fit;                 // least squares of s = 2 nu sqrt(d_l t)
  double max_balance_residual;   // worst relative Stefan-balance defect
};

// Explicit finite-difference march of the two-phase problem with the front
// tracked through the Stefan balance (one-sided interface gradients, Euler
// front ODE) and the convective condition imposed through a ghost node at
// x = 0.  Used only to cross-validate the closed forms.
OracleRun run_oracle(const StefanProblem& problem, const GridConfig& grid);

}  // namespace stefan::oracle
