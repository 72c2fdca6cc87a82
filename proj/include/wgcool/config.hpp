#pragma once

// JSON configuration: parsing with fail-closed validation, presets,
// and the canonical echo written into every output header.

#include <string>
#include <vector>

#include "wgcool/sweeps.hpp"
#include "wgcool/system.hpp"

namespace wgcool {

struct SweepConfig {
    SweepKind kind = SweepKind::ForceCurve;
    double grid_min = -5.0;
    double grid_max = 5.0;
    int n_points = 401;
    bool log_spaced = false;
    std::vector<double> family;
    bool scale_by_kappa = true;

    /// Grid points; a linear grid symmetric about zero is exactly mirror symmetric.
    [[nodiscard]] std::vector<double> grid() const;
};

struct SimConfig {
    Scenario scenario;
    SweepConfig sweep;
};

/// Defaults of the sweep block for a given kind.
[[nodiscard]] SweepConfig default_sweep(SweepKind kind);

/// Parses a UTF-8 JSON document. Missing keys take their defaults; unknown
/// keys and violated constraints throw ConfigError naming the key path.
/// `default_kind` applies when the document does not set sweep.kind.
[[nodiscard]] SimConfig parse_config(const std::string& text,
                                     SweepKind default_kind = SweepKind::ForceCurve);

/// Presets 2 (force curve), 3 (kappa sweep) and 4 (detuning sweep).
/// Throws ConfigError for any other id.
[[nodiscard]] SimConfig preset(int id);

/// Complete effective configuration as compact JSON; parse_config of the
/// result reproduces the same SimConfig.
[[nodiscard]] std::string to_json(const SimConfig& config, int indent = -1);

[[nodiscard]] SweepKind parse_sweep_kind(const std::string& name);

}  // namespace wgcool
