#include "wgcool/system.hpp"

namespace wgcool {

double Scenario::omega_p() const { return 2.0 * constants::pi * constants::c / lambda_p_m; }

SystemState build_system(const Scenario& sc) {
    SystemState sys;
    const double omega_p = sc.omega_p();

    std::vector<int> indices = {1, 2};
    indices.insert(indices.end(), sc.extra_branches.begin(), sc.extra_branches.end());
    sys.model = rectangular_waveguide(sc.kappa, omega_p - sc.delta_thresh,
                                      sc.a0_over_lambda_p_sq * sc.lambda_p_m * sc.lambda_p_m,
                                      sc.x_frac, indices);

    sys.pump.omega_p = omega_p;
    sys.pump.k_p = pump_wavenumber(sys.model, omega_p);
    sys.pump.Omega_eff = sc.omega_eff;
    sys.pump.two_sided = sc.two_sided;

    sys.atom.gamma = sc.gamma;
    sys.atom.delta_A = sc.delta_A_over_gamma * sc.gamma;
    sys.atom.mass = sc.mass_kg;
    sys.atom.x_frac = sc.x_frac;

    sys.numerics = sc.numerics;
    sys.include_shift = sc.include_shift;
    return sys;
}

}  // namespace wgcool
