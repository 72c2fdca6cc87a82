#pragma once

#include <vector>

#include "wgcool/model.hpp"
#include "wgcool/quadrature.hpp"

namespace wgcool {

/// Everything the force and steady-state evaluations need.
struct SystemState {
    WaveguideModel model;
    AtomParams atom;
    PumpParams pump;
    NumericsConfig numerics;
    bool include_shift = false;  ///< keep the waveguide light shift and broadening in <s+s>
};

/// User-facing physical parameters of the rectangular-guide setup. Geometry is
/// parametrized by the pump detuning from the first excited threshold.
struct Scenario {
    // atom
    double gamma = 2e7;
    double delta_A_over_gamma = 1e5;
    double mass_kg = 1.443e-25;  // 87Rb
    double x_frac = 0.25;
    bool include_shift = false;
    // pump
    double lambda_p_m = 780e-9;
    double omega_eff = 2e9;
    bool two_sided = true;
    // waveguide
    double kappa = 1e9;
    double delta_thresh = -3e9;  ///< omega_p - omega_th of the n = 2 branch, rad/s
    double a0_over_lambda_p_sq = 1.0;
    std::vector<int> extra_branches;  ///< indices >= 3 added to {1, 2}

    NumericsConfig numerics;

    [[nodiscard]] double omega_p() const;
};

/// Throws NonPropagatingPump when delta_thresh pushes the fundamental
/// threshold above the pump.
[[nodiscard]] SystemState build_system(const Scenario& scenario);

}  // namespace wgcool
