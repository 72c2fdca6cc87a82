#include "wgcool/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "wgcool/errors.hpp"

namespace wgcool {

using constants::c;

namespace {

// QUADPACK qk15 abscissae and weights.
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

constexpr std::array<double, 5> kPanelMultiples = {1.0, 3.0, 10.0, 30.0, 100.0};
constexpr int kMaxTailDoublings = 64;

struct GkEstimate {
    double kronrod;
    double gauss;
};

GkEstimate gauss_kronrod_15(const std::function<double(double)>& f, double a, double b) {
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const double fc = f(center);
    double kronrod = kWgk[7] * fc;
    double gauss = kWg[3] * fc;
    for (int j = 0; j < 7; ++j) {
        const double dx = half * kXgk[j];
        const double pair = f(center - dx) + f(center + dx);
        kronrod += kWgk[j] * pair;
        if (j % 2 == 1) gauss += kWg[j / 2] * pair;
    }
    return {kronrod * half, gauss * half};
}

template <class Pred>
double bisect(double lo, double hi, Pred is_low) {
    for (int it = 0; it < 4096; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (!(mid > std::min(lo, hi) && mid < std::max(lo, hi))) break;
        if (is_low(mid)) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return lo;
}

// Geometry for v >= 0 (with k_p >= 0 when v == 0); callers mirror the rest.
ResonanceGeometry canonical_geometry(const ModeKernel& kernel, double v, double kp) {
    ResonanceGeometry geo;
    auto slope = [&](double k) { return c * c * k / kernel.omega(k) - v; };
    auto R = [&](double k) { return kernel.resonance(k, v, kp); };

    if (v > 0.0) {
        double hi = kernel.omega_th() / c;
        int guard = 0;
        while (slope(hi) <= 0.0) {
            hi *= 2.0;
            if (++guard > 2000) throw std::domain_error("resonance minimum not bracketed");
        }
        geo.k_min = bisect(0.0, hi, [&](double k) { return slope(k) < 0.0; });
    }
    geo.r_min = R(geo.k_min);
    const double w = kernel.omega(geo.k_min);
    geo.curvature = c * c * kernel.omega_th() * kernel.omega_th() / (w * w * w);

    if (geo.r_min == 0.0) {
        geo.roots.push_back(geo.k_min);
    } else if (geo.r_min < 0.0) {
        const double step0 = std::sqrt(2.0 * -geo.r_min / geo.curvature);
        for (double side : {-1.0, 1.0}) {
            double step = step0;
            double far = geo.k_min + side * step;
            int guard = 0;
            while (R(far) <= 0.0) {
                step *= 2.0;
                far = geo.k_min + side * step;
                if (++guard > 2000) throw std::domain_error("resonance root not bracketed");
            }
            geo.roots.push_back(bisect(geo.k_min, far, [&](double k) { return R(k) < 0.0; }));
        }
    }
    return geo;
}

}  // namespace

void NumericsConfig::validate() const {
    if (!(rel_tol > 0.0)) throw std::invalid_argument("rel_tol must be > 0");
    if (!(abs_tol >= 0.0)) throw std::invalid_argument("abs_tol must be >= 0");
    if (!(max_evals > 0)) throw std::invalid_argument("max_evals must be > 0");
    if (!(tail_factor >= 10.0)) throw std::invalid_argument("tail_factor must be >= 10");
    if (!(fd_step_frac > 0.0)) throw std::invalid_argument("fd_step_frac must be > 0");
    if (!(panel_scale > 0.0)) throw std::invalid_argument("panel_scale must be > 0");
}

ResonanceGeometry resonance_geometry(const ModeKernel& kernel, double v, double k_p_signed) {
    if (!(std::abs(v) < c)) throw std::domain_error("velocity must be below c");
    const bool mirrored = v < 0.0 || (v == 0.0 && k_p_signed < 0.0);
    if (!mirrored) return canonical_geometry(kernel, v, k_p_signed);

    ResonanceGeometry geo = canonical_geometry(kernel, -v, -k_p_signed);
    geo.k_min = -geo.k_min;
    for (double& r : geo.roots) r = -r;
    std::reverse(geo.roots.begin(), geo.roots.end());
    return geo;
}

std::vector<double> find_resonances(const Branch& branch, double v, double k_p_signed,
                                    const PumpParams& pump) {
    return resonance_geometry(ModeKernel(branch, 0.0, pump.omega_p), v, k_p_signed).roots;
}

std::vector<double> initial_breakpoints(const ModeKernel& kernel, double v, double k_p_signed,
                                        double kappa, double k_max, double panel_scale) {
    const ResonanceGeometry geo = resonance_geometry(kernel, v, k_p_signed);
    // Width of a peak sitting at the band edge, where the slope of R vanishes.
    const double edge_width = std::sqrt(2.0 * kappa / geo.curvature);

    std::vector<std::pair<double, double>> features;  // (centre, width)
    features.emplace_back(geo.k_min,
                          std::sqrt(2.0 * std::max(std::abs(geo.r_min), kappa) / geo.curvature));
    for (double r : geo.roots) {
        const double slope = std::abs(c * c * r / kernel.omega(r) - v);
        features.emplace_back(r, std::min(kappa / slope, edge_width));
    }

    std::vector<double> pts = {-k_max, k_max};
    auto add = [&](double k) {
        if (k > -k_max && k < k_max) pts.push_back(k);
    };
    for (const auto& [x, w] : features) {
        add(x);
        for (double m : kPanelMultiples) {
            add(x - panel_scale * m * w);
            add(x + panel_scale * m * w);
        }
    }
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    return pts;
}

namespace {

// Neighbouring panels may differ in width by at most this factor. Without it
// a single GK15 panel can span decades beyond the last graded panel and be
// accepted while missing the shoulder of a peak at its edge.
constexpr double kMaxGrowth = 4.0;

void grade(std::vector<double>& pts) {
    const std::vector<double> seed = pts;
    const std::size_t n = seed.size();
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const double a = seed[i], b = seed[i + 1];
        const double mid = 0.5 * (a + b);
        // grow away from each end separately so the result stays mirror-exact
        if (i > 0) {
            const double w = seed[i] - seed[i - 1];
            for (double step = kMaxGrowth * w; a + step < mid; step *= kMaxGrowth) pts.push_back(a + step);
        }
        if (i + 2 < n) {
            const double w = seed[i + 2] - seed[i + 1];
            for (double step = kMaxGrowth * w; b - step > mid; step *= kMaxGrowth) pts.push_back(b - step);
        }
    }
    std::sort(pts.begin(), pts.end());
}

}  // namespace

PanelResult adaptive_gauss_kronrod(const std::function<double(double)>& f, double a, double b,
                                   double rel_tol, double floor, long& budget) {
    PanelResult out;
    std::vector<std::pair<double, double>> stack = {{a, b}};
    while (!stack.empty()) {
        const auto [lo, hi] = stack.back();
        stack.pop_back();
        if (budget < 15) {
            throw QuadratureFailure("evaluation budget exhausted on panel [" + std::to_string(lo) +
                                    ", " + std::to_string(hi) + "]");
        }
        const GkEstimate est = gauss_kronrod_15(f, lo, hi);
        budget -= 15;
        out.evals += 15;
        if (!std::isfinite(est.kronrod)) {
            throw QuadratureFailure("non-finite integrand near k = " + std::to_string(0.5 * (lo + hi)));
        }
        const double err = std::abs(est.kronrod - est.gauss);
        const double mid = 0.5 * (lo + hi);
        const bool unsplittable =
            !(mid > lo && mid < hi) ||
            (hi - lo) <= 64.0 * std::numeric_limits<double>::epsilon() *
                             std::max(std::abs(lo), std::abs(hi));
        if (unsplittable || err <= std::max(floor, rel_tol * std::abs(est.kronrod))) {
            out.value += est.kronrod;
            out.error += err;
        } else {
            stack.emplace_back(mid, hi);
            stack.emplace_back(lo, mid);
        }
    }
    return out;
}

QuadResult integrate_branch(const BranchIntegrand& integrand, const ModeKernel& kernel, double v,
                            double k_p_signed, double kappa, const NumericsConfig& cfg) {
    const double k_ref = k_p_signed != 0.0 ? std::abs(k_p_signed) : kernel.omega_p() / c;
    const double s = c - std::abs(v);
    const double b = kernel.omega_p() + std::abs(k_p_signed * v);
    double k_max = std::max(cfg.tail_factor * k_ref, 2.0 * b / s);

    std::vector<double> pts = initial_breakpoints(
        kernel, v, k_p_signed, kappa, std::numeric_limits<double>::infinity(), cfg.panel_scale);
    // Every seeded panel stays well inside the truncation window.
    if (pts.size() > 2) {
        k_max = std::max(k_max, 2.0 * std::max(std::abs(pts[1]), std::abs(pts[pts.size() - 2])));
    }
    pts.front() = -k_max;
    pts.back() = k_max;
    grade(pts);

    long budget = cfg.max_evals;
    QuadResult result;

    double l1 = 0.0;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        if (budget < 15) throw QuadratureFailure("evaluation budget exhausted in the coarse pass");
        l1 += std::abs(gauss_kronrod_15(integrand.f, pts[i], pts[i + 1]).kronrod);
        budget -= 15;
    }
    const double floor = std::max(cfg.abs_tol, 1e-3 * cfg.rel_tol * l1);

    struct Piece {
        double a;
        PanelResult r;
    };
    std::vector<Piece> pieces;
    double partial = 0.0;
    auto integrate_piece = [&](double lo, double hi) {
        PanelResult r = adaptive_gauss_kronrod(integrand.f, lo, hi, cfg.rel_tol, floor, budget);
        partial += r.value;
        pieces.push_back({lo, r});
    };
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) integrate_piece(pts[i], pts[i + 1]);

    double tail = integrand.tail_bound(k_max);
    int doublings = 0;
    while (!(tail <= cfg.abs_tol + cfg.rel_tol * std::abs(partial))) {
        if (++doublings > kMaxTailDoublings || !std::isfinite(tail)) {
            throw QuadratureFailure("tail bound does not close (k_max = " + std::to_string(k_max) + ")");
        }
        const double next = 2.0 * k_max;
        integrate_piece(-next, -k_max);
        integrate_piece(k_max, next);
        k_max = next;
        tail = integrand.tail_bound(k_max);
    }

    std::sort(pieces.begin(), pieces.end(), [](const Piece& x, const Piece& y) { return x.a < y.a; });
    for (const Piece& p : pieces) {
        result.value += p.r.value;
        result.error += p.r.error;
    }
    result.error += tail;
    result.k_max = k_max;
    result.evals = cfg.max_evals - budget;
    return result;
}

}  // namespace wgcool
