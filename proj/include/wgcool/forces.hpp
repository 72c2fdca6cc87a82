#pragma once

#include <vector>

#include "wgcool/system.hpp"

namespace wgcool {

struct BranchForce {
    int n = 0;
    double force = 0.0;  ///< N
};

struct ForceResult {
    double total = 0.0;            ///< N
    double free_space_term = 0.0;  ///< N
    std::vector<BranchForce> per_branch;
    double quad_error = 0.0;  ///< N

    /// Everything but the free-space term.
    [[nodiscard]] double waveguide() const { return total - free_space_term; }
};

enum class DerivativeMethod { Analytic, FiniteDifference };

[[nodiscard]] const char* to_string(DerivativeMethod method);

struct FrictionResult {
    double beta = 0.0;             ///< kg/s, positive means cooling
    double beta_normalized = 0.0;  ///< beta / (4 hbar k_p^2 s0)
    DerivativeMethod method = DerivativeMethod::Analytic;
    double s0 = 0.0;  ///< rest excitation of one pump
    double quad_error = 0.0;  ///< kg/s
};

/// Mean force from the pump travelling along pump_sign * k_p, using that
/// pump's own excitation probability.
[[nodiscard]] ForceResult single_pump_force(double v, int pump_sign, const SystemState& sys);

/// Incoherent sum of both pumps when two_sided, otherwise the +k_p pump alone.
[[nodiscard]] ForceResult total_force(double v, const SystemState& sys);

struct ForceSlope {
    double slope = 0.0;  ///< N s/m
    double quad_error = 0.0;
};

/// d<F(pump_sign k_p)>/dv, differentiating under the integral sign.
[[nodiscard]] ForceSlope single_pump_force_slope(double v, int pump_sign, const SystemState& sys);

/// beta = -dF_total/dv at rest. Requires two-sided pumping.
[[nodiscard]] FrictionResult friction_coefficient(const SystemState& sys, DerivativeMethod method);

/// Analytic beta cross-checked against the finite difference. Throws
/// DerivativeMismatch when they differ by more than `tolerance` relative.
[[nodiscard]] FrictionResult checked_friction_coefficient(const SystemState& sys,
                                                          double tolerance = 1e-3);

/// 4 hbar k_p^2 s0: the largest two-beam free-space Doppler friction at
/// excitation s0, reached at delta_A = gamma.
[[nodiscard]] double free_space_friction_max(double s0, double k_p);

/// F_fs = 2 hbar s0 k_p gamma for one pump at rest.
[[nodiscard]] double free_space_force(const SystemState& sys);

/// Smallest v > 0 where total_force changes sign. Brackets geometrically from
/// 1e-3 kappa/k_p in steps of 1.5 up to 1e3 kappa/k_p, then bisects to 1e-6
/// relative. Throws NoSignChange without a bracket, std::domain_error when the
/// force does not oppose the motion at the first step.
[[nodiscard]] double capture_range(const SystemState& sys);

}  // namespace wgcool
