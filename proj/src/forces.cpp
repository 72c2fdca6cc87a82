#include "wgcool/forces.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "wgcool/errors.hpp"
#include "wgcool/integrands.hpp"
#include "wgcool/steady_state.hpp"

namespace wgcool {

using constants::hbar;

namespace {

struct BranchIntegrals {
    std::vector<BranchForce> values;  // integrals, not yet scaled
    double sum = 0.0;
    double error = 0.0;
};

BranchIntegrals integrate_branches(IntegrandKind kind, double v, int pump_sign,
                                   const SystemState& sys) {
    const double kp = pump_sign * sys.pump.k_p;
    const double kappa = sys.model.kappa;
    BranchIntegrals out;
    for (const Branch& branch : sys.model.branches) {
        const ModeKernel kernel(branch, sys.atom, sys.pump);
        const QuadResult r =
            integrate_branch(make_integrand(kind, kernel, v, kp, kappa), kernel, v, kp, kappa, sys.numerics);
        out.values.push_back({branch.n, r.value});
        out.sum += r.value;
        out.error += r.error;
    }
    return out;
}

void require_two_sided(const SystemState& sys) {
    if (!sys.pump.two_sided) {
        throw std::invalid_argument("the friction coefficient needs two-sided pumping");
    }
}

}  // namespace

const char* to_string(DerivativeMethod method) {
    return method == DerivativeMethod::Analytic ? "analytic" : "finite_difference";
}

ForceResult single_pump_force(double v, int pump_sign, const SystemState& sys) {
    check_pump_sign(pump_sign);
    const double s = excitation(v, pump_sign, sys);
    const double kp = pump_sign * sys.pump.k_p;
    const double scale = 2.0 * hbar * s;

    const BranchIntegrals wg = integrate_branches(IntegrandKind::Force, v, pump_sign, sys);
    ForceResult out;
    out.free_space_term = scale * kp * sys.atom.gamma;
    out.total = out.free_space_term;
    for (const BranchForce& b : wg.values) {
        out.per_branch.push_back({b.n, scale * b.force});
        out.total += scale * b.force;
    }
    out.quad_error = scale * wg.error;
    return out;
}

ForceResult total_force(double v, const SystemState& sys) {
    ForceResult plus = single_pump_force(v, +1, sys);
    if (!sys.pump.two_sided) return plus;
    const ForceResult minus = single_pump_force(v, -1, sys);

    plus.total += minus.total;
    plus.free_space_term += minus.free_space_term;
    for (std::size_t i = 0; i < plus.per_branch.size(); ++i) {
        plus.per_branch[i].force += minus.per_branch[i].force;
    }
    plus.quad_error += minus.quad_error;
    return plus;
}

ForceSlope single_pump_force_slope(double v, int pump_sign, const SystemState& sys) {
    check_pump_sign(pump_sign);
    const ExcitationSlope s = excitation_with_slope(v, pump_sign, sys);
    const double kp = pump_sign * sys.pump.k_p;
    const BranchIntegrals force = integrate_branches(IntegrandKind::Force, v, pump_sign, sys);
    const BranchIntegrals slope = integrate_branches(IntegrandKind::ForceSlope, v, pump_sign, sys);
    const double bracket = kp * sys.atom.gamma + force.sum;
    ForceSlope out;
    out.slope = 2.0 * hbar * (s.slope * bracket + s.value * slope.sum);
    out.quad_error = 2.0 * hbar * (std::abs(s.slope) * force.error + s.value * slope.error);
    return out;
}

double free_space_friction_max(double s0, double k_p) { return 4.0 * hbar * k_p * k_p * s0; }

double free_space_force(const SystemState& sys) {
    return 2.0 * hbar * excitation(0.0, +1, sys) * sys.pump.k_p * sys.atom.gamma;
}

FrictionResult friction_coefficient(const SystemState& sys, DerivativeMethod method) {
    require_two_sided(sys);
    FrictionResult out;
    out.method = method;
    out.s0 = excitation(0.0, +1, sys);
    if (method == DerivativeMethod::Analytic) {
        const ForceSlope plus = single_pump_force_slope(0.0, +1, sys);
        const ForceSlope minus = single_pump_force_slope(0.0, -1, sys);
        out.beta = -(plus.slope + minus.slope);
        out.quad_error = plus.quad_error + minus.quad_error;
    } else {
        const double h = sys.numerics.fd_step_frac * sys.model.kappa / sys.pump.k_p;
        const ForceResult up = total_force(h, sys);
        const ForceResult down = total_force(-h, sys);
        out.beta = -(up.total - down.total) / (2.0 * h);
        out.quad_error = (up.quad_error + down.quad_error) / (2.0 * h);
    }
    out.beta_normalized = out.beta / free_space_friction_max(out.s0, sys.pump.k_p);
    return out;
}

FrictionResult checked_friction_coefficient(const SystemState& sys, double tolerance) {
    const FrictionResult analytic = friction_coefficient(sys, DerivativeMethod::Analytic);
    const FrictionResult fd = friction_coefficient(sys, DerivativeMethod::FiniteDifference);
    const double scale = std::max(std::abs(analytic.beta), std::abs(fd.beta));
    if (std::abs(analytic.beta - fd.beta) > tolerance * scale) {
        throw DerivativeMismatch("analytic beta " + std::to_string(analytic.beta) +
                                 " vs finite-difference beta " + std::to_string(fd.beta));
    }
    return analytic;
}

double capture_range(const SystemState& sys) {
    const double unit = sys.model.kappa / sys.pump.k_p;
    const double cap = 1e3 * unit;
    double lo = 1e-3 * unit;
    if (!(total_force(lo, sys).total < 0.0)) {
        throw std::domain_error("force does not oppose the motion near rest; no cooling regime");
    }
    double hi = lo;
    for (;;) {
        lo = hi;
        hi *= 1.5;
        if (hi > cap) {
            throw NoSignChange("total force keeps its sign up to " + std::to_string(cap) + " m/s");
        }
        if (total_force(hi, sys).total >= 0.0) break;
    }
    while (hi - lo > 1e-6 * hi) {
        const double mid = 0.5 * (lo + hi);
        if (total_force(mid, sys).total < 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace wgcool
