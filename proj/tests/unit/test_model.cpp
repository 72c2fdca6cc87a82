#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "wgcool/errors.hpp"
#include "wgcool/model.hpp"
#include "wgcool/system.hpp"

using namespace wgcool;
using constants::c;
using constants::pi;

namespace {

Branch branch(double omega_th) { return Branch{1, omega_th, 1.0, 1e-12}; }

bool close(double a, double b, double rel) { return std::abs(a - b) <= rel * std::max(std::abs(a), std::abs(b)); }

}  // namespace

TEST_CASE("branch frequency") {
    CHECK(branch_frequency(branch(1e15), 0.0) == 1e15);
    CHECK(close(branch_frequency(branch(3.0), 4.0 / c), 5.0, 1e-15));
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> k(-1e9, 1e9);
    const Branch b = branch(2.4e15);
    for (int i = 0; i < 100; ++i) {
        const double kk = k(rng);
        CHECK(branch_frequency(b, kk) == branch_frequency(b, -kk));
        CHECK(branch_frequency(b, kk) > b.omega_th);
    }
}

TEST_CASE("group velocity") {
    const Branch b = branch(2.4e15);
    CHECK(group_velocity(b, 0.0) == 0.0);
    // omega - omega_th in a form without cancellation, so small k stays resolvable
    auto rise = [&](double k) { return c * c * k * k / (branch_frequency(b, k) + b.omega_th); };
    for (double k : {1e3, 7e6, 3e7, 1e9, -5e6}) {
        const double h = 1e-5 * std::abs(k);
        const double fd = (rise(k + h) - rise(k - h)) / (2.0 * h);
        CHECK(close(group_velocity(b, k), fd, 1e-8));
        CHECK(std::abs(group_velocity(b, k)) < c);
    }
}

TEST_CASE("transverse amplitude") {
    CHECK(transverse_amplitude(2, 0.25) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
    CHECK(transverse_amplitude(1, 0.25) == doctest::Approx(1.0).epsilon(1e-15));
    for (int n = 1; n <= 5; ++n) {
        CHECK(transverse_amplitude(n, 0.0) == 0.0);
        CHECK(transverse_amplitude(n, 1.0) == 0.0);
        for (double x : {0.1, 0.3, 0.45})
            CHECK(std::abs(transverse_amplitude(n, 1.0 - x)) == doctest::Approx(std::abs(transverse_amplitude(n, x))));
    }
    CHECK_THROWS_AS((void)transverse_amplitude(1, -0.1), std::domain_error);
    CHECK_THROWS_AS((void)transverse_amplitude(1, 1.5), std::domain_error);
}

TEST_CASE("radiative cross section") {
    CHECK(radiative_cross_section(780e-9) == doctest::Approx(3.0 * 780e-9 * 780e-9 / (2.0 * pi)));
    CHECK(radiative_cross_section(780e-9) == doctest::Approx(2.9049e-13).epsilon(1e-4));
}

TEST_CASE("coupling strength") {
    PumpParams pump{2.0 * pi * c / 780e-9, 0.0, 2e9, true};
    AtomParams atom{2e7, 2e12, 1.443e-25, 0.25, 0.0};
    Branch b = branch(0.5 * pump.omega_p);
    const double g0 = coupling_sq(b, 0.0, atom, pump);
    const double expect = atom.sigma_A(pump) / b.A_eff * atom.omega_A(pump) / b.omega_th * atom.gamma * c / (4 * pi);
    CHECK(g0 == doctest::Approx(expect).epsilon(1e-14));
    Branch wide = b;
    wide.A_eff *= 2.0;
    CHECK(coupling_sq(wide, 3e6, atom, pump) == doctest::Approx(0.5 * coupling_sq(b, 3e6, atom, pump)).epsilon(1e-15));
    // g^2 omega_n(k) is constant along the branch, so g^2 falls with |k|.
    double prev = g0;
    for (double k : {1e5, 1e6, 1e7, 1e8}) {
        const double g = coupling_sq(b, k, atom, pump);
        CHECK(g * branch_frequency(b, k) == doctest::Approx(g0 * b.omega_th).epsilon(1e-14));
        CHECK(g < prev);
        prev = g;
    }
}

TEST_CASE("detuning and pump wavenumber") {
    const Scenario sc;
    const SystemState sys = build_system(sc);
    const Branch& fund = sys.model.fundamental();
    CHECK(std::abs(detuning(fund, sys.pump.k_p, sys.pump)) <= 1e-9 * sc.kappa);
    CHECK(std::abs(detuning(fund, -sys.pump.k_p, sys.pump)) <= 1e-9 * sc.kappa);
    const Branch& excited = sys.model.branches[1];
    CHECK(detuning(excited, 0.0, sys.pump) == doctest::Approx(-sc.delta_thresh).epsilon(1e-12));
    for (double k : {1e3, 1e6, 7e6, 1e8}) {
        CHECK(detuning(excited, k, sys.pump) == detuning(excited, -k, sys.pump));
        // Against the direct difference, which is accurate to a few ulp of omega.
        const double direct = branch_frequency(fund, k) - sys.pump.omega_p;
        CHECK(std::abs(detuning(fund, k, sys.pump) - direct) <= 1e-15 * sys.pump.omega_p * 4);
    }
    // omega_th,1 is within a few kappa of omega_p / 2, so k_p ~ (sqrt 3 / 2) omega_p / c.
    CHECK(sys.pump.k_p == doctest::Approx(std::sqrt(3.0) / 2.0 * sys.pump.omega_p / c).epsilon(1e-5));
    CHECK(branch_frequency(fund, sys.pump.k_p) == doctest::Approx(sys.pump.omega_p).epsilon(1e-12));

    WaveguideModel m;
    m.branches = {branch(2.0)};
    CHECK(pump_wavenumber(m, 4.0) == doctest::Approx(std::sqrt(3.0) * 2.0 / c).epsilon(1e-14));
    CHECK_THROWS_AS((void)pump_wavenumber(m, 2.0), NonPropagatingPump);
    CHECK_THROWS_AS((void)pump_wavenumber(m, 1.0), NonPropagatingPump);
}

TEST_CASE("rectangular waveguide thresholds") {
    const double w2 = 2.4e15;
    const WaveguideModel m = rectangular_waveguide(1e9, w2, 6e-13, 0.25, {1, 2, 3, 4});
    REQUIRE(m.branches.size() == 4);
    for (const Branch& b : m.branches) {
        CHECK(b.omega_th == doctest::Approx(b.n * pi * c / m.width_a).epsilon(1e-14));
        CHECK(b.u_A == doctest::Approx(transverse_amplitude(b.n, 0.25)).epsilon(1e-14));
    }
    // x = 1/4 sits on a node of n = 4.
    CHECK(std::isinf(m.branches[3].A_eff));
}

TEST_CASE("mode kernel matches the free functions") {
    const SystemState sys = build_system(Scenario{});
    for (const Branch& b : sys.model.branches) {
        const ModeKernel kern(b, sys.atom, sys.pump);
        for (double k : {0.0, 1e5, -6.9e6, 2e7}) {
            CHECK(kern.omega(k) == doctest::Approx(branch_frequency(b, k)).epsilon(1e-15));
            CHECK(kern.g2(k) == doctest::Approx(coupling_sq(b, k, sys.atom, sys.pump)).epsilon(1e-14));
            CHECK(std::abs(kern.delta(k) - detuning(b, k, sys.pump)) <= 1e-6);
        }
    }
}
