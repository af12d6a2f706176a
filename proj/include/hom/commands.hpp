// commands.hpp: CLI subcommands as library functions producing file contents.

#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "hom/config.hpp"

namespace hom {

inline constexpr std::string_view kToolName = "hybridoptomech";
inline constexpr std::string_view kToolVersion = "1.0.0";

inline constexpr int kExitOk = 0;
inline constexpr int kExitFatal = 1;
inline constexpr int kExitCellFailures = 2;

struct CommandOutput {
    std::string text;
    int exit_code{kExitOk};
};

/// Shortest decimal representation that parses back to the same double.
std::string format_number(double x);

/// Linearized parameters for single-point commands; in physical mode the
/// steady state is solved and a branch chosen (config.branch is required when
/// more than one branch is stable). Throws Error.
LinearParams resolve_linear(const RunConfig& config);

CommandOutput cmd_spectrum(const RunConfig& config);
CommandOutput cmd_occupation(const RunConfig& config);
CommandOutput cmd_map2d(const RunConfig& config, unsigned workers);
CommandOutput cmd_compare(const RunConfig& config, unsigned workers);
CommandOutput cmd_resonant_map(const RunConfig& config, unsigned workers);
CommandOutput cmd_steady_state(const RunConfig& config);

std::vector<std::string> command_names();

/// Dispatches by subcommand name. Throws Error for unknown names.
CommandOutput run_command(std::string_view name, const RunConfig& config, unsigned workers);

}  // namespace hom
