#pragma once

#include "dsinpaint/ds_solver.hpp"

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace dsinpaint {

enum ExitCode : int { kExitOk = 0, kExitUsage = 1, kExitIo = 2, kExitNumerical = 3 };

/// One CLI invocation. Unset optionals fall back to the command's defaults.
struct RunConfig {
    std::string command;  ///< inpaint | baseline | shock | experiment
    std::string input;
    std::string mask;
    std::string output;   ///< image path, or a directory for `experiment`
    std::string report;
    std::string name;     ///< experiment name

    std::optional<double> sigma;
    std::optional<double> rho;
    std::optional<double> nu;
    std::optional<double> lambda;
    std::optional<double> delta;
    std::optional<double> tau;
    std::optional<double> tol;
    std::optional<int> max_iter;

    InitMode init = InitMode::keep;
    std::uint64_t seed = 0;
};

/// Parses argv (argv[0] is the program name). Options may also come from a
/// key=value file given by --config; command-line values win.
/// Throws UsageError; returns nullopt after printing --help.
std::optional<RunConfig> parse_command_line(const std::vector<std::string>& args,
                                            std::ostream& out);

SolverParams solver_params(const RunConfig& config, SolverParams base = {});
ShockParams shock_params(const RunConfig& config, ShockParams base = {});

/// Executes the configured pipeline. Throws UsageError, IoError or
/// PreconditionError.
void run(const RunConfig& config, std::ostream& log);

/// parse_command_line + run with errors mapped to exit codes.
int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace dsinpaint
