#pragma once

// Stationary internal state of the moving atom: the light shift and
// broadening induced by the guided continuum, and the mean excitation
// probability in the unsaturated regime.

#include "wgcool/system.hpp"

namespace wgcool {

/// i Delta_A + Gamma_A, the waveguide self-energy of the excited state.
struct ComplexShift {
    double delta_shift = 0.0;  ///< Delta_A, rad/s
    double gamma_broad = 0.0;  ///< Gamma_A, rad/s, never negative
    double error = 0.0;        ///< summed quadrature error estimate of both parts
};

/// Integrates the shift over every branch for the pump travelling along
/// pump_sign * k_p. Throws QuadratureFailure.
[[nodiscard]] ComplexShift waveguide_shift(double v, int pump_sign, const SystemState& sys);

/// Velocity derivative of waveguide_shift, differentiated under the integral.
[[nodiscard]] ComplexShift waveguide_shift_slope(double v, int pump_sign, const SystemState& sys);

/// <s+s> = Omega_eff^2 / ((delta_A + k v + Delta_A)^2 + (gamma + Gamma_A)^2) with
/// k = pump_sign k_p. With include_shift false, Delta_A = Gamma_A = 0.
[[nodiscard]] double excitation(double v, int pump_sign, const SystemState& sys, bool include_shift);

/// Same, using sys.include_shift.
[[nodiscard]] double excitation(double v, int pump_sign, const SystemState& sys);

struct ExcitationSlope {
    double value = 0.0;
    double slope = 0.0;  ///< d<s+s>/dv, including the shift's own velocity dependence
};

[[nodiscard]] ExcitationSlope excitation_with_slope(double v, int pump_sign, const SystemState& sys);

/// Throws std::invalid_argument unless pump_sign is +1 or -1.
void check_pump_sign(int pump_sign);

}  // namespace wgcool
