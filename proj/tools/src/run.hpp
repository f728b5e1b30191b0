#pragma once

#include <ostream>

#include "run_config.hpp"

namespace plap::cli {

/// Executes one parsed command: writes result.json / CSV tables (per emit)
/// and the plot .dat files into out_dir. Returns the process exit code
/// (0 success, 4 when verify-all has failing criteria). Invalid run-time
/// configuration throws ConfigError, solver breakdowns throw SolverError;
/// the caller maps those to exit codes 2 and 3.
int run(const RunConfig& rc, std::ostream& log);

}  // namespace plap::cli
