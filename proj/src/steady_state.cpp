#include "wgcool/steady_state.hpp"

#include <stdexcept>
#include <string>

#include "wgcool/integrands.hpp"

namespace wgcool {

namespace {

ComplexShift integrate_shift(double v, int pump_sign, const SystemState& sys, IntegrandKind broad,
                             IntegrandKind shift) {
    check_pump_sign(pump_sign);
    const double kp = pump_sign * sys.pump.k_p;
    const double kappa = sys.model.kappa;
    ComplexShift out;
    for (const Branch& branch : sys.model.branches) {
        const ModeKernel kernel(branch, sys.atom, sys.pump);
        const QuadResult g = integrate_branch(make_integrand(broad, kernel, v, kp, kappa), kernel, v,
                                              kp, kappa, sys.numerics);
        const QuadResult d = integrate_branch(make_integrand(shift, kernel, v, kp, kappa), kernel, v,
                                              kp, kappa, sys.numerics);
        out.gamma_broad += g.value;
        out.delta_shift += d.value;
        out.error += g.error + d.error;
    }
    return out;
}

}  // namespace

void check_pump_sign(int pump_sign) {
    if (pump_sign != 1 && pump_sign != -1) {
        throw std::invalid_argument("pump_sign must be +1 or -1, got " + std::to_string(pump_sign));
    }
}

ComplexShift waveguide_shift(double v, int pump_sign, const SystemState& sys) {
    return integrate_shift(v, pump_sign, sys, IntegrandKind::Broadening, IntegrandKind::Shift);
}

ComplexShift waveguide_shift_slope(double v, int pump_sign, const SystemState& sys) {
    return integrate_shift(v, pump_sign, sys, IntegrandKind::BroadeningSlope,
                           IntegrandKind::ShiftSlope);
}

double excitation(double v, int pump_sign, const SystemState& sys, bool include_shift) {
    check_pump_sign(pump_sign);
    ComplexShift shift;
    if (include_shift) shift = waveguide_shift(v, pump_sign, sys);
    const double detune = sys.atom.delta_A + pump_sign * sys.pump.k_p * v + shift.delta_shift;
    const double width = sys.atom.gamma + shift.gamma_broad;
    const double omega = sys.pump.Omega_eff;
    return omega * omega / (detune * detune + width * width);
}

double excitation(double v, int pump_sign, const SystemState& sys) {
    return excitation(v, pump_sign, sys, sys.include_shift);
}

ExcitationSlope excitation_with_slope(double v, int pump_sign, const SystemState& sys) {
    check_pump_sign(pump_sign);
    ComplexShift shift;
    ComplexShift dshift;
    if (sys.include_shift) {
        shift = waveguide_shift(v, pump_sign, sys);
        dshift = waveguide_shift_slope(v, pump_sign, sys);
    }
    const double kp = pump_sign * sys.pump.k_p;
    const double detune = sys.atom.delta_A + kp * v + shift.delta_shift;
    const double width = sys.atom.gamma + shift.gamma_broad;
    const double den = detune * detune + width * width;
    const double omega = sys.pump.Omega_eff;

    ExcitationSlope out;
    out.value = omega * omega / den;
    const double dden = 2.0 * detune * (kp + dshift.delta_shift) + 2.0 * width * dshift.gamma_broad;
    out.slope = -out.value * dden / den;
    return out;
}

}  // namespace wgcool
