#pragma once

// Resonance-aware integration over the longitudinal wavenumber axis.
//
// Integrands are Lorentzian-peaked at the roots of the two-photon resonance
// function R(k) = delta_n(k) - (k - k_p) v. Because omega_n(k) is convex and
// the Doppler term is linear, R is convex and has at most two roots. The axis
// is split at those roots and at the minimum of R, graded panels resolve each
// peak, and Gauss-Kronrod 7/15 with recursive bisection does the rest. The
// tails beyond +-k_max are bounded analytically using g^2 <= G / (c |k|).

#include <functional>
#include <vector>

#include "wgcool/model.hpp"

namespace wgcool {

struct NumericsConfig {
    double rel_tol = 1e-8;
    double abs_tol = 1e-30;
    long max_evals = 10'000'000;  ///< per integral
    double tail_factor = 1e3;     ///< initial k_max in units of k_p
    double fd_step_frac = 1e-3;   ///< finite-difference step in units of kappa / k_p
    double panel_scale = 1.0;     ///< multiplies every initial panel width

    /// Throws std::invalid_argument naming the violated constraint.
    void validate() const;
};

/// Shape of R(k) on one branch: location and value of its minimum, its
/// curvature there, and its real roots (sorted, at most two).
struct ResonanceGeometry {
    double k_min = 0.0;
    double r_min = 0.0;
    double curvature = 0.0;
    std::vector<double> roots;
};

/// Requires |v| < c. Exactly mirror symmetric: (v, k_p) -> (-v, -k_p) negates
/// and reverses every returned wavenumber.
[[nodiscard]] ResonanceGeometry resonance_geometry(const ModeKernel& kernel, double v,
                                                   double k_p_signed);

[[nodiscard]] std::vector<double> find_resonances(const Branch& branch, double v, double k_p_signed,
                                                  const PumpParams& pump);

/// An integrand over k together with a bound on its absolute integral over
/// |k| > K (both tails). The bound may assume K is large compared with every
/// resonance of the branch.
struct BranchIntegrand {
    std::function<double(double)> f;
    std::function<double(double)> tail_bound;
};

struct QuadResult {
    double value = 0.0;
    double error = 0.0;  ///< panel error estimates plus the tail bound
    double k_max = 0.0;  ///< truncation point actually used
    long evals = 0;
};

/// Integrates `integrand` over the whole k axis of `branch`. Throws
/// QuadratureFailure when max_evals is exhausted or the tail never closes.
[[nodiscard]] QuadResult integrate_branch(const BranchIntegrand& integrand, const ModeKernel& kernel,
                                          double v, double k_p_signed, double kappa,
                                          const NumericsConfig& cfg);

/// Initial breakpoints used by integrate_branch inside (-k_max, k_max),
/// sorted and including both end points.
[[nodiscard]] std::vector<double> initial_breakpoints(const ModeKernel& kernel, double v,
                                                      double k_p_signed, double kappa,
                                                      double k_max, double panel_scale);

struct PanelResult {
    double value = 0.0;
    double error = 0.0;
    long evals = 0;
};

/// Adaptive Gauss-Kronrod 7/15 on [a, b]. A sub-panel is accepted once its
/// |K15 - G7| falls below max(floor, rel_tol |K15|). `budget` is decremented by
/// the evaluations spent; QuadratureFailure is thrown when it runs out.
[[nodiscard]] PanelResult adaptive_gauss_kronrod(const std::function<double(double)>& f, double a,
                                                 double b, double rel_tol, double floor,
                                                 long& budget);

}  // namespace wgcool
