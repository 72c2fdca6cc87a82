#include "wgcool/model.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "wgcool/errors.hpp"

namespace wgcool {

using constants::c;
using constants::pi;

double AtomParams::lambda_A(const PumpParams& pump) const { return 2.0 * pi * c / omega_A(pump); }

double AtomParams::sigma_A(const PumpParams& pump) const {
    return radiative_cross_section(lambda_A(pump));
}

double radiative_cross_section(double lambda) { return 3.0 * lambda * lambda / (2.0 * pi); }

double branch_frequency(const Branch& branch, double k) { return std::hypot(branch.omega_th, c * k); }

double group_velocity(const Branch& branch, double k) {
    return c * c * k / branch_frequency(branch, k);
}

double transverse_amplitude(int n, double x_frac) {
    if (!(x_frac >= 0.0 && x_frac <= 1.0)) {
        throw std::domain_error("transverse position must lie in [0, 1], got " +
                                std::to_string(x_frac));
    }
    // Walls are exact nodes; sin(n pi) would leave a residue of order 1e-16.
    if (x_frac == 0.0 || x_frac == 1.0) return 0.0;
    return std::numbers::sqrt2 * std::sin(n * pi * x_frac);
}

double coupling_sq(const Branch& branch, double k, const AtomParams& atom, const PumpParams& pump) {
    return ModeKernel(branch, atom, pump).g2(k);
}

double detuning(const Branch& branch, double k, const PumpParams& pump) {
    return ModeKernel(branch, 0.0, pump.omega_p).delta(k);
}

double pump_wavenumber(const WaveguideModel& model, double omega_p) {
    if (model.branches.empty()) throw std::invalid_argument("waveguide has no branches");
    const double w_th = model.fundamental().omega_th;
    if (!(omega_p > w_th)) {
        throw NonPropagatingPump("pump frequency " + std::to_string(omega_p) +
                                 " rad/s does not exceed the fundamental threshold " +
                                 std::to_string(w_th) + " rad/s");
    }
    return std::sqrt((omega_p - w_th) * (omega_p + w_th)) / c;
}

WaveguideModel rectangular_waveguide(double kappa, double omega_th_excited, double a0, double x_frac,
                                     const std::vector<int>& indices) {
    WaveguideModel model;
    model.kappa = kappa;
    model.width_a = 2.0 * pi * c / omega_th_excited;
    for (int n : indices) {
        Branch b;
        b.n = n;
        b.omega_th = 0.5 * n * omega_th_excited;  // n pi c / a
        b.u_A = transverse_amplitude(n, x_frac);
        const double u2 = b.u_A * b.u_A;
        // Numerical nodes (|u| ~ 1e-16) are treated as exact nodes.
        b.A_eff = u2 > 1e-24 ? a0 / u2 : std::numeric_limits<double>::infinity();
        model.branches.push_back(b);
    }
    return model;
}

ModeKernel::ModeKernel(const Branch& branch, const AtomParams& atom, const PumpParams& pump)
    : ModeKernel(branch,
                 (atom.sigma_A(pump) / branch.A_eff) * atom.omega_A(pump) * atom.gamma * c /
                     (4.0 * pi),
                 pump.omega_p) {}

ModeKernel::ModeKernel(const Branch& branch, double coupling_numerator, double omega_p)
    : omega_th_(branch.omega_th),
      omega_p_(omega_p),
      delta_th_(branch.omega_th - omega_p),
      k_star_(branch.omega_th < omega_p
                  ? std::sqrt((omega_p - branch.omega_th) * (omega_p + branch.omega_th)) / c
                  : 0.0),
      coupling_(coupling_numerator) {}

double ModeKernel::omega(double k) const { return std::hypot(omega_th_, c * k); }

double ModeKernel::delta(double k) const {
    const double w = omega(k);
    if (k_star_ > 0.0) {
        const double ak = std::abs(k);
        return c * c * (ak - k_star_) * (ak + k_star_) / (w + omega_p_);
    }
    return delta_th_ + c * c * k * k / (w + omega_th_);
}

}  // namespace wgcool
