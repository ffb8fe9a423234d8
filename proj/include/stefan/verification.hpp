#pragma once

#include <string>
#include <vector>

#include "stefan/model.hpp"

namespace stefan::verify {

struct Check {
  std::string name;
  double measured;
  double tolerance;
  bool pass;
};

// Residual suite for a two-phase solution: heat-equation residual by central
// differences on a 50x50 grid strictly inside each phase, interface zeros,
// Stefan balance, convective condition at x = 0, and the t -> 0 initial
// condition.  Tolerances are fixed here.
std::vector<Check> residual_suite(const SimilaritySolution& sol);

// Conduction-regime counterpart: the two defining relations of the explicit
// coefficients (Robin condition and the t -> 0 limit) plus direct boundary /
// initial residuals.
std::vector<Check> conduction_suite(const ConductionSolution& sol);

// Front-coefficient agreement between the closed form and the
// finite-difference march at the given resolution (2% gate).
Check oracle_check(const SimilaritySolution& sol, int nx);

bool all_pass(const std::vector<Check>& checks);

}  // namespace stefan::verify
