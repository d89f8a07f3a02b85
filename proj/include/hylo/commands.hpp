#pragma once

#include <filesystem>
#include <ostream>

#include "hylo/config.hpp"

namespace hylo {

/// Process exit codes.
enum ExitCode : int {
    exit_ok = 0,
    exit_numerical_failure = 1,  ///< blow-up or non-convergence
    exit_config_error = 2,
};

int cmd_evolve(const RunConfig& config, std::ostream& log);
int cmd_soliton(const RunConfig& config, std::ostream& log);
int cmd_stability(const RunConfig& config, std::ostream& log);
int cmd_diagnostics(const RunConfig& config, std::ostream& log);

/// Dispatches on config.command.
int run_command(const RunConfig& config, std::ostream& log);

/// Loads, validates and runs one configuration file, mapping errors to exit
/// codes.
int run_config_file(const std::filesystem::path& path, std::ostream& log);

/// Builds the soliton requested by a soliton block.
SolitonSolution solve_soliton(const SolitonBlock& block, const RunConfig& config);

}  // namespace hylo
