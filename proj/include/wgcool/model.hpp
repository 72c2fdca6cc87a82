#pragma once

// Physical system: a lossy waveguide with a discrete set of mode branches,
// a far-detuned two-level atom standing in for a polarizable particle, and
// the pump injected into the fundamental branch.

#include <numbers>
#include <vector>

namespace wgcool {

namespace constants {
inline constexpr double c = 2.99792458e8;        // m/s
inline constexpr double hbar = 1.054571817e-34;  // J s
inline constexpr double pi = std::numbers::pi;
}  // namespace constants

/// One family of guided modes sharing a transverse profile.
struct Branch {
    int n = 1;              ///< transverse index, 1 = fundamental
    double omega_th = 0.0;  ///< threshold (band-edge) angular frequency, rad/s
    double u_A = 1.0;       ///< transverse amplitude at the atom
    double A_eff = 1.0;     ///< effective mode cross section, m^2 (may be +inf)
};

struct WaveguideModel {
    double width_a = 0.0;  ///< m
    double kappa = 0.0;    ///< photon loss rate, 1/s
    std::vector<Branch> branches;  ///< thresholds strictly increasing

    [[nodiscard]] const Branch& fundamental() const { return branches.front(); }
};

struct PumpParams {
    double omega_p = 0.0;    ///< rad/s
    double k_p = 0.0;        ///< rad/m, positive root on the fundamental branch
    double Omega_eff = 0.0;  ///< effective pumped-mode Rabi amplitude, rad/s
    bool two_sided = true;
};

/// Two-level surrogate of the particle. Derived optical quantities depend on
/// the pump frequency through delta_A, so they are computed on demand.
struct AtomParams {
    double gamma = 0.0;    ///< half-width of the atomic line, 1/s
    double delta_A = 0.0;  ///< omega_A - omega_p, rad/s
    double mass = 0.0;     ///< kg
    double x_frac = 0.25;  ///< transverse position / waveguide width
    double z_A = 0.0;      ///< m, drops out of every mean value

    [[nodiscard]] double omega_A(const PumpParams& pump) const { return pump.omega_p + delta_A; }
    [[nodiscard]] double lambda_A(const PumpParams& pump) const;
    [[nodiscard]] double sigma_A(const PumpParams& pump) const;
};

/// sigma = 3 lambda^2 / (2 pi).
[[nodiscard]] double radiative_cross_section(double lambda);

/// omega_n(k) = sqrt(omega_th^2 + (c k)^2).
[[nodiscard]] double branch_frequency(const Branch& branch, double k);

/// d omega_n / dk = c^2 k / omega_n(k).
[[nodiscard]] double group_velocity(const Branch& branch, double k);

/// sqrt(2) sin(n pi x); the cross-sectional mean of its square is one.
/// Throws std::domain_error unless 0 <= x_frac <= 1.
[[nodiscard]] double transverse_amplitude(int n, double x_frac);

/// g_kn^2 = (sigma_A / A_eff) (omega_A / omega_n(k)) (gamma c / 4 pi), in m/s^2.
[[nodiscard]] double coupling_sq(const Branch& branch, double k, const AtomParams& atom,
                                 const PumpParams& pump);

/// delta_n(k) = omega_n(k) - omega_p, evaluated without catastrophic
/// cancellation near the pump resonance.
[[nodiscard]] double detuning(const Branch& branch, double k, const PumpParams& pump);

/// Positive wavenumber of the fundamental branch at omega_p.
/// Throws NonPropagatingPump if omega_p does not exceed the fundamental threshold.
[[nodiscard]] double pump_wavenumber(const WaveguideModel& model, double omega_p);

/// Rectangular guide with conducting walls: omega_th,n = n pi c / a, with the
/// width fixed by the threshold of the first excited (n = 2) branch.
/// A_eff,n = a0 / u_n(x_frac)^2, infinite where the atom sits on a node.
[[nodiscard]] WaveguideModel rectangular_waveguide(double kappa, double omega_th_excited,
                                                   double a0, double x_frac,
                                                   const std::vector<int>& indices);

/// Per-branch evaluation kernel with the pump- and atom-dependent constants
/// folded in. Every integrand in the library is built on top of it.
class ModeKernel {
public:
    ModeKernel(const Branch& branch, const AtomParams& atom, const PumpParams& pump);
    ModeKernel(const Branch& branch, double coupling_numerator, double omega_p);

    [[nodiscard]] double omega(double k) const;
    [[nodiscard]] double delta(double k) const;
    [[nodiscard]] double g2(double k) const { return coupling_ / omega(k); }

    /// R(k) = delta(k) - (k - k_p_signed) v, the two-photon resonance function.
    [[nodiscard]] double resonance(double k, double v, double k_p_signed) const {
        return delta(k) - (k - k_p_signed) * v;
    }

    /// g^2 omega, constant along the branch.
    [[nodiscard]] double coupling_numerator() const { return coupling_; }
    [[nodiscard]] double omega_th() const { return omega_th_; }
    [[nodiscard]] double omega_p() const { return omega_p_; }

private:
    double omega_th_;
    double omega_p_;
    double delta_th_;  // omega_th - omega_p
    double k_star_;    // wavenumber at omega_p, zero above the pump
    double coupling_;
};

}  // namespace wgcool
