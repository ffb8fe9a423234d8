#pragma once

#include <ostream>

#include "stefan/run_config.hpp"

namespace stefan::cli {

// Command entry points.  The human-readable summary goes to `out`; tabular
// data goes to cfg.output_path when set, otherwise to `out` as well.  All
// emitted numbers use 17 significant digits, '.' decimal separator and '\n'
// line endings, so identical configs produce byte-identical files.
//
// Exit codes: 0 success (all checks green for verify), 1 verify failures,
// 2 validation errors, 3 numerical failures.  Validation and numerical
// errors are thrown (ValidationError / NumericalError) and mapped by the
// caller.
int cmd_solve(const RunConfig& cfg, std::ostream& out);
int cmd_verify(const RunConfig& cfg, std::ostream& out);
int cmd_sweep(const RunConfig& cfg, std::ostream& out);
int cmd_limit(const RunConfig& cfg, std::ostream& out);

int run_command(const RunConfig& cfg, std::ostream& out);

}  // namespace stefan::cli
