#include <doctest.h>

#include <cmath>
#include <random>

#include "oracle.hpp"
#include "wgcool/errors.hpp"
#include "wgcool/integrands.hpp"
#include "wgcool/quadrature.hpp"
#include "wgcool/system.hpp"

using namespace wgcool;
using constants::c;
using constants::pi;

namespace {

const SystemState& base_system() {
    static const SystemState sys = build_system(Scenario{});
    return sys;
}

double unit() { return base_system().model.kappa / base_system().pump.k_p; }

}  // namespace

TEST_CASE("resonances at rest sit at the pump wavenumbers") {
    const SystemState& sys = base_system();
    const auto roots = find_resonances(sys.model.fundamental(), 0.0, sys.pump.k_p, sys.pump);
    REQUIRE(roots.size() == 2);
    CHECK(roots[0] == doctest::Approx(-sys.pump.k_p).epsilon(1e-12));
    CHECK(roots[1] == doctest::Approx(sys.pump.k_p).epsilon(1e-12));
    // Excited branch above the pump: no resonance.
    CHECK(find_resonances(sys.model.branches[1], 0.0, sys.pump.k_p, sys.pump).empty());
}

TEST_CASE("pump above an excited threshold gives the quadratic band-edge roots") {
    Scenario sc;
    sc.delta_thresh = 3e9;
    const SystemState sys = build_system(sc);
    const Branch& b = sys.model.branches[1];
    const double v = 1.0;
    const auto roots = find_resonances(b, v, sys.pump.k_p, sys.pump);
    REQUIRE(roots.size() == 2);
    const double expect = std::sqrt((sc.delta_thresh - sys.pump.k_p * v) * 2.0 * b.omega_th) / c;
    CHECK(roots[0] == doctest::Approx(-expect).epsilon(1e-2));
    CHECK(roots[1] == doctest::Approx(expect).epsilon(1e-2));
}

TEST_CASE("roots solve R = 0, never exceed two and mirror exactly") {
    const SystemState& sys = base_system();
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> x(-200.0, 200.0);
    for (int i = 0; i < 200; ++i) {
        const double v = x(rng) * unit();
        for (const Branch& b : sys.model.branches) {
            const ModeKernel kern(b, sys.atom, sys.pump);
            for (double kps : {sys.pump.k_p, -sys.pump.k_p}) {
                const auto roots = find_resonances(b, v, kps, sys.pump);
                CHECK(roots.size() <= 2);
                for (double r : roots) CHECK(std::abs(kern.resonance(r, v, kps)) <= 1e-9 * sys.model.kappa);
                const auto mirrored = find_resonances(b, -v, -kps, sys.pump);
                REQUIRE(mirrored.size() == roots.size());
                for (std::size_t j = 0; j < roots.size(); ++j) CHECK(mirrored[j] == -roots[roots.size() - 1 - j]);
            }
        }
    }
}

TEST_CASE("roots agree with the closed-form quadratic") {
    const SystemState& sys = base_system();
    for (double x : {-50.0, -3.0, 0.0, 0.7, 4.0, 120.0}) {
        const double v = x * unit();
        for (const Branch& b : sys.model.branches) {
            std::vector<double> ref;
            for (const auto& ft : oracle::closed_form_features(b, sys.pump.omega_p, v, sys.pump.k_p, sys.model.kappa))
                ref.push_back(ft.centre);
            const auto roots = find_resonances(b, v, sys.pump.k_p, sys.pump);
            // the closed form also reports the minimum of R
            REQUIRE(ref.size() == roots.size() + 1);
            for (double r : roots) {
                const bool found = std::any_of(ref.begin(), ref.end(), [&](double k) { return std::abs(k - r) <= 1e-6 * std::abs(r) + 1e-3; });
                CHECK(found);
            }
        }
    }
}

TEST_CASE("linearized Lorentzian integrates to pi / c'") {
    const SystemState& sys = base_system();
    const Branch& b = sys.model.fundamental();
    const ModeKernel kern(b, sys.atom, sys.pump);
    const double kappa = sys.model.kappa;
    const double k0 = sys.pump.k_p;
    const double cp = group_velocity(b, k0);
    BranchIntegrand in{[&](double k) { return kappa / ((k - k0) * (k - k0) * cp * cp + kappa * kappa); },
                       [&](double K) { return K > k0 ? 2.0 * kappa / (cp * cp * (K - k0)) : INFINITY; }};
    const QuadResult q = integrate_branch(in, kern, 0.0, k0, kappa, sys.numerics);
    const double exact = pi / cp;
    CHECK(std::abs(q.value - exact) <= 1e-8 * exact);
    CHECK(q.error >= std::abs(q.value - exact) / 10.0);
    CHECK(q.k_max >= sys.numerics.tail_factor * k0);
}

TEST_CASE("zero integrand") {
    const SystemState& sys = base_system();
    const ModeKernel kern(sys.model.fundamental(), sys.atom, sys.pump);
    BranchIntegrand zero{[](double) { return 0.0; }, [](double) { return 0.0; }};
    const QuadResult q = integrate_branch(zero, kern, 0.3 * unit(), sys.pump.k_p, sys.model.kappa, sys.numerics);
    CHECK(q.value == 0.0);
    CHECK(q.error == 0.0);
}

TEST_CASE("adaptive Gauss-Kronrod") {
    long budget = 100000;
    auto r = adaptive_gauss_kronrod([](double x) { return std::pow(x, 5); }, 0.0, 1.0, 1e-12, 0.0, budget);
    CHECK(r.value == doctest::Approx(1.0 / 6.0).epsilon(1e-15));
    CHECK(r.evals == 15);
    const double kappa = 1e9, cp = 2.6e8;
    budget = 100000;
    r = adaptive_gauss_kronrod([&](double x) { return kappa / (x * x * cp * cp + kappa * kappa); }, -30.0, 100.0,
                               1e-10, 0.0, budget);
    const double exact = (std::atan(100.0 * cp / kappa) + std::atan(30.0 * cp / kappa)) / cp;
    CHECK(r.value == doctest::Approx(exact).epsilon(1e-10));
    budget = 30;
    CHECK_THROWS_AS((void)adaptive_gauss_kronrod([&](double x) { return kappa / (x * x * cp * cp + kappa * kappa); },
                                                 -30.0, 100.0, 1e-10, 0.0, budget),
                    QuadratureFailure);
}

TEST_CASE("evaluation budget exhaustion throws") {
    SystemState sys = base_system();
    sys.numerics.max_evals = 200;
    const ModeKernel kern(sys.model.fundamental(), sys.atom, sys.pump);
    const auto in = make_integrand(IntegrandKind::Force, kern, 0.5 * unit(), sys.pump.k_p, sys.model.kappa);
    CHECK_THROWS_AS((void)integrate_branch(in, kern, 0.5 * unit(), sys.pump.k_p, sys.model.kappa, sys.numerics),
                    QuadratureFailure);
}

TEST_CASE("result is stable under a longer axis and finer initial panels") {
    const SystemState& sys = base_system();
    for (IntegrandKind kind : {IntegrandKind::Force, IntegrandKind::Broadening, IntegrandKind::Shift}) {
        for (double x : {0.0, 0.8, -4.0, 60.0}) {
            const double v = x * unit();
            for (const Branch& b : sys.model.branches) {
                const ModeKernel kern(b, sys.atom, sys.pump);
                const auto in = make_integrand(kind, kern, v, sys.pump.k_p, sys.model.kappa);
                const QuadResult base = integrate_branch(in, kern, v, sys.pump.k_p, sys.model.kappa, sys.numerics);
                NumericsConfig longer = sys.numerics;
                longer.tail_factor *= 2.0;
                NumericsConfig finer = sys.numerics;
                finer.panel_scale = 0.5;
                const double tol = sys.numerics.rel_tol * std::abs(base.value);
                CHECK(std::abs(integrate_branch(in, kern, v, sys.pump.k_p, sys.model.kappa, longer).value - base.value) <= tol);
                CHECK(std::abs(integrate_branch(in, kern, v, sys.pump.k_p, sys.model.kappa, finer).value - base.value) <= tol);
            }
        }
    }
}

TEST_CASE("error estimate is not optimistic against the oracle") {
    const SystemState& sys = base_system();
    const double kappa = sys.model.kappa;
    for (double x : {0.0, 1.3, -4.0}) {
        const double v = x * unit();
        for (const Branch& b : sys.model.branches) {
            const ModeKernel kern(b, sys.atom, sys.pump);
            const double kps = sys.pump.k_p;
            const auto in = make_integrand(IntegrandKind::Broadening, kern, v, kps, kappa);
            const QuadResult q = integrate_branch(in, kern, v, kps, kappa, sys.numerics);
            auto f = [&](double k) {
                const double r = branch_frequency(b, k) - sys.pump.omega_p - (k - kps) * v;
                return kappa * coupling_sq(b, k, sys.atom, sys.pump) / (r * r + kappa * kappa);
            };
            const double ref = oracle::oracle_trapezoid(f, b, sys.pump.omega_p, v, kps, kappa, 1L << 21, q.k_max);
            CHECK(std::abs(q.value - ref) <= 1e-6 * std::abs(ref));
            // the estimate may only undershoot the observed deviation by 10x
            CHECK(10.0 * q.error + 1e-7 * std::abs(ref) >= std::abs(q.value - ref));
        }
    }
}

TEST_CASE("oracle trapezoid") {
    const double kappa = 1e9, cp = 2.6e8;
    auto lor = [&](double x) { return kappa / (x * x * cp * cp + kappa * kappa); };
    const double a = -20.0, b = 30.0;
    const double exact = (std::atan(b * cp / kappa) - std::atan(a * cp / kappa)) / cp;
    const double e22 = std::abs(oracle::trapezoid(lor, a, b, (1L << 22) + 1) - exact);
    CHECK(e22 <= 1e-5 * exact);
    const double e1 = std::abs(oracle::trapezoid(lor, a, b, (1L << 12) + 1) - exact);
    const double e2 = std::abs(oracle::trapezoid(lor, a, b, (1L << 13) + 1) - exact);
    CHECK(e1 / e2 == doctest::Approx(4.0).epsilon(0.05));
    // reversed grid, symmetric integrand
    auto even = [](double x) { return std::exp(-x * x); };
    CHECK(oracle::trapezoid(even, -3.0, 3.0, 1001) == doctest::Approx(-oracle::trapezoid(even, 3.0, -3.0, 1001)).epsilon(1e-14));
    CHECK(oracle::trapezoid(even, -3.0, 0.0, 501) == doctest::Approx(oracle::trapezoid(even, 0.0, 3.0, 501)).epsilon(1e-14));
}
