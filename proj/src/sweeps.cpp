#include "wgcool/sweeps.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "wgcool/errors.hpp"
#include "wgcool/forces.hpp"
#include "wgcool/parallel.hpp"

namespace wgcool {

namespace {

constexpr std::size_t kSpotCheckStride = 10;

template <class E>
[[noreturn]] void retag(const E& e, const std::string& where) {
    throw E(where + ": " + e.what());
}

template <class Fn>
void tagged(const std::string& where, Fn&& fn) {
    try {
        fn();
    } catch (const QuadratureFailure& e) {
        retag(e, where);
    } catch (const DerivativeMismatch& e) {
        retag(e, where);
    } catch (const NonPropagatingPump& e) {
        retag(e, where);
    }
}

void check_grid(const SweepRequest& req) {
    if (req.grid.empty()) throw std::invalid_argument("sweep grid is empty");
    for (std::size_t i = 1; i < req.grid.size(); ++i) {
        if (!(req.grid[i] > req.grid[i - 1])) {
            throw std::invalid_argument("sweep grid must be strictly increasing");
        }
    }
    if (req.kind == SweepKind::Kappa && !(req.grid.front() > 0.0)) {
        throw std::invalid_argument("kappa grid values must be positive");
    }
}

}  // namespace

const char* to_string(SweepKind kind) {
    switch (kind) {
        case SweepKind::ForceCurve: return "force_curve";
        case SweepKind::Kappa: return "kappa";
        case SweepKind::Delta: return "delta";
    }
    return "unknown";
}

std::vector<SweepRow> run_sweep(const Scenario& scenario, const SweepRequest& req) {
    check_grid(req);
    const std::size_t n_grid = req.grid.size();

    if (req.kind == SweepKind::ForceCurve) {
        const SystemState sys = build_system(scenario);
        const double f_fs = free_space_force(sys);
        const double unit = req.scale_by_kappa ? sys.model.kappa / sys.pump.k_p : 1.0;
        std::vector<SweepRow> rows(n_grid);
        parallel_for(n_grid, req.threads, [&](std::size_t i) {
            const double v = req.grid[i] * unit;
            tagged("force curve at v = " + std::to_string(v) + " m/s", [&] {
                const ForceResult f = total_force(v, sys);
                rows[i] = {v, scenario.delta_thresh, f.total, f.total / f_fs, f.quad_error};
            });
        });
        return rows;
    }

    const bool kappa_sweep = req.kind == SweepKind::Kappa;
    std::vector<double> family = req.family;
    if (family.empty()) {
        if (kappa_sweep) {
            family.push_back(req.scale_by_kappa ? scenario.delta_thresh / scenario.kappa
                                                : scenario.delta_thresh);
        } else {
            family.push_back(scenario.kappa);
        }
    }

    std::vector<SweepRow> rows(family.size() * n_grid);
    parallel_for(rows.size(), req.threads, [&](std::size_t idx) {
        const std::size_t curve = idx / n_grid;
        const std::size_t i = idx % n_grid;
        Scenario sc = scenario;
        if (kappa_sweep) {
            sc.kappa = req.grid[i];
            sc.delta_thresh = req.scale_by_kappa ? family[curve] * sc.kappa : family[curve];
        } else {
            sc.kappa = family[curve];
            sc.delta_thresh = req.scale_by_kappa ? req.grid[i] * sc.kappa : req.grid[i];
        }
        const std::string where = std::string(kappa_sweep ? "kappa" : "delta") +
                                  " sweep at kappa = " + std::to_string(sc.kappa) +
                                  " 1/s, delta = " + std::to_string(sc.delta_thresh) + " rad/s";
        tagged(where, [&] {
            const SystemState sys = build_system(sc);
            const FrictionResult fr = i % kSpotCheckStride == 0
                                          ? checked_friction_coefficient(sys)
                                          : friction_coefficient(sys, DerivativeMethod::Analytic);
            const double x = kappa_sweep ? sc.kappa : sc.delta_thresh;
            const double other = kappa_sweep ? sc.delta_thresh : sc.kappa;
            rows[idx] = {x, other, fr.beta, fr.beta_normalized, fr.quad_error};
        });
    });
    return rows;
}

FitResult power_law_fit(const std::vector<double>& x, const std::vector<double>& value) {
    if (x.size() != value.size()) throw std::invalid_argument("power_law_fit: size mismatch");
    if (x.size() < 3) throw std::invalid_argument("power_law_fit needs at least three points");
    const std::size_t n = x.size();
    std::vector<double> lx(n);
    std::vector<double> ly(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (!(x[i] > 0.0) || !(value[i] > 0.0)) {
            throw NonPositiveValue("power_law_fit: point " + std::to_string(i) + " has x = " +
                                   std::to_string(x[i]) + ", value = " + std::to_string(value[i]));
        }
        lx[i] = std::log(x[i]);
        ly[i] = std::log(value[i]);
    }
    double mx = 0.0;
    double my = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += lx[i];
        my += ly[i];
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    double sxx = 0.0;
    double sxy = 0.0;
    double syy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = lx[i] - mx;
        const double dy = ly[i] - my;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    if (!(sxx > 0.0)) throw std::invalid_argument("power_law_fit: all x values coincide");

    FitResult fit;
    fit.exponent = sxy / sxx;
    fit.log_prefactor = my - fit.exponent * mx;
    double ss_res = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double r = ly[i] - (fit.log_prefactor + fit.exponent * lx[i]);
        ss_res += r * r;
    }
    fit.r_squared = syy > 0.0 ? std::clamp(1.0 - ss_res / syy, 0.0, 1.0) : 1.0;
    return fit;
}

}  // namespace wgcool
