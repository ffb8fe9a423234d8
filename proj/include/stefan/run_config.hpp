#pragma once

#include <string>
#include <vector>

#include "stefan/model.hpp"

namespace stefan::cli {

// Parsed and validated run description.  Unknown JSON keys are rejected;
// grids must be strictly increasing.
struct RunConfig {
  std::string command;  // solve | verify | sweep | limit
  StefanProblem problem{};

  std::vector<double> x_grid;  // empty: x_count points over [0, 4 s(t_max)]
  int x_count = 101;
  std::vector<double> t_grid{0.1, 1.0, 10.0};

  std::string output_path;       // empty: write to the summary stream
  std::string format = "csv";    // csv | json

  std::string sweep_parameter;
  std::vector<double> sweep_values;

  std::vector<double> limit_h0;        // explicit ladder; wins over factors
  std::vector<double> limit_factors{10.0, 100.0, 1e3, 1e4, 1e5, 1e6};

  double nu_perturbation = 0.0;  // verify-only test hook
  int oracle_nx = 400;           // verify-only oracle resolution

  bool integer_alpha = false;    // routing echo: alpha within 1e-12 of an integer
};

// Parses the JSON document for the given command.  Throws ValidationError
// with the parse position on malformed JSON and with the offending field on
// a validation failure.
RunConfig parse_config(const std::string& text, const std::string& command);

}  // namespace stefan::cli
