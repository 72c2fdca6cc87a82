#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

#include "wgcool/config.hpp"

namespace wgcool::cli {

enum ExitCode : int { kOk = 0, kFailure = 1, kConfigError = 2, kQuadratureFailure = 3 };

enum class Subcommand { ForceCurve, KappaSweep, DeltaSweep, Shift, Preset };

[[nodiscard]] Subcommand parse_subcommand(const std::string& name);
[[nodiscard]] const char* to_string(Subcommand cmd);

/// Sweep kind a subcommand runs (shift reuses the velocity grid).
[[nodiscard]] SweepKind sweep_kind_for(Subcommand cmd);

/// Resolves the effective configuration from an optional file or preset id.
/// Throws ConfigError when both are given, when the file cannot be read, or
/// when the configured sweep kind does not match the subcommand.
[[nodiscard]] SimConfig load_config(Subcommand cmd, const std::optional<std::filesystem::path>& config_path,
                                    std::optional<int> preset_id);

struct RunOptions {
    std::filesystem::path out_dir = ".";
    unsigned threads = 1;
    std::optional<int> preset_id;  ///< for the preset subcommand
};

/// Executes a subcommand, writes its CSV into out_dir and prints a one-line
/// summary to `log`. Output files are written atomically; nothing is left
/// behind on failure. Errors are reported on `err` and mapped to exit codes.
int run(Subcommand cmd, const SimConfig& config, const RunOptions& options, std::ostream& log,
        std::ostream& err);

/// argv-level entry point used by the executable.
int main(int argc, char** argv);

}  // namespace wgcool::cli
