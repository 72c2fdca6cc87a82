#pragma once

#include <vector>

#include "wgcool/system.hpp"

namespace wgcool {

enum class SweepKind { ForceCurve, Kappa, Delta };

[[nodiscard]] const char* to_string(SweepKind kind);

/// One tabulated point. For a force curve x = v (m/s), value = F (N) and the
/// normalization is F_fs; for the friction sweeps value = beta (kg/s)
/// normalized by the free-space maximum, with x and secondary being
/// (kappa, Delta) or (Delta, kappa).
struct SweepRow {
    double x = 0.0;
    double secondary = 0.0;
    double value = 0.0;
    double normalized = 0.0;
    double quad_error = 0.0;
};

struct SweepRequest {
    SweepKind kind = SweepKind::ForceCurve;
    std::vector<double> grid;  ///< strictly increasing
    /// Kappa sweep: one curve per Delta. Delta sweep: one curve per kappa.
    /// Empty means the scenario's own value. Ignored for force curves.
    std::vector<double> family;
    /// Force-curve grid in units of kappa/k_p; Delta (grid or family) in units of kappa.
    bool scale_by_kappa = true;
    unsigned threads = 1;
};

/// Rows come back curve by curve, each in grid order, whatever the thread
/// count. Friction is computed analytically and cross-checked by finite
/// differences at every tenth grid point. Errors are rethrown with the
/// failing grid point prepended to the message, preserving their type.
[[nodiscard]] std::vector<SweepRow> run_sweep(const Scenario& scenario, const SweepRequest& request);

struct FitResult {
    double exponent = 0.0;
    double log_prefactor = 0.0;  ///< natural log
    double r_squared = 0.0;
};

/// Least squares of ln(value) on ln(x). Needs at least three points; throws
/// NonPositiveValue if any x or value is <= 0.
[[nodiscard]] FitResult power_law_fit(const std::vector<double>& x, const std::vector<double>& value);

}  // namespace wgcool
