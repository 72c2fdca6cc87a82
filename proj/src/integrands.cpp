#include "wgcool/integrands.hpp"

#include <cmath>
#include <limits>

namespace wgcool {

using constants::c;

const char* to_string(IntegrandKind kind) {
    switch (kind) {
        case IntegrandKind::Force: return "force";
        case IntegrandKind::Broadening: return "broadening";
        case IntegrandKind::Shift: return "shift";
        case IntegrandKind::ForceSlope: return "force_slope";
        case IntegrandKind::BroadeningSlope: return "broadening_slope";
        case IntegrandKind::ShiftSlope: return "shift_slope";
    }
    return "unknown";
}

BranchIntegrand make_integrand(IntegrandKind kind, const ModeKernel& kernel, double v,
                               double k_p_signed, double kappa) {
    const ModeKernel ker = kernel;
    const double kp = k_p_signed;
    const double k2 = kappa * kappa;
    const double G = kernel.coupling_numerator();
    const double s = c - std::abs(v);
    const double b = kernel.omega_p() + std::abs(kp * v);

    BranchIntegrand out;
    // Majorant pieces shared by all bounds; infinite until K clears b / s.
    auto gap = [s, b](double K) { return s * K - b; };
    auto ratio = [kp](double K) { return 1.0 + std::abs(kp) / K; };
    constexpr double inf = std::numeric_limits<double>::infinity();

    switch (kind) {
        case IntegrandKind::Force:
            out.f = [=](double k) {
                const double X = ker.resonance(k, v, kp);
                return kappa * (kp - k) * ker.g2(k) / (X * X + k2);
            };
            out.tail_bound = [=](double K) {
                const double d = gap(K);
                return d > 0.0 ? 2.0 * kappa * G * ratio(K) / (c * s * d) : inf;
            };
            break;
        case IntegrandKind::Broadening:
            out.f = [=](double k) {
                const double X = ker.resonance(k, v, kp);
                return kappa * ker.g2(k) / (X * X + k2);
            };
            out.tail_bound = [=](double K) {
                const double d = gap(K);
                return d > 0.0 ? 2.0 * kappa * G / (c * K * s * d) : inf;
            };
            break;
        case IntegrandKind::Shift:
            out.f = [=](double k) {
                const double X = ker.resonance(k, v, kp);
                return -ker.g2(k) * X / (X * X + k2);
            };
            out.tail_bound = [=](double K) {
                const double d = gap(K);
                return d > 0.0 ? 2.0 * G / (c * d) : inf;
            };
            break;
        case IntegrandKind::ForceSlope:
            out.f = [=](double k) {
                const double X = ker.resonance(k, v, kp);
                const double den = X * X + k2;
                return kappa * (kp - k) * ker.g2(k) * 2.0 * X * (k - kp) / (den * den);
            };
            out.tail_bound = [=](double K) {
                const double d = gap(K);
                const double r = ratio(K);
                return d > 0.0 ? 4.0 * kappa * G * r * r * K * K / (c * d * d * d) : inf;
            };
            break;
        case IntegrandKind::BroadeningSlope:
            out.f = [=](double k) {
                const double X = ker.resonance(k, v, kp);
                const double den = X * X + k2;
                return 2.0 * kappa * ker.g2(k) * X * (k - kp) / (den * den);
            };
            out.tail_bound = [=](double K) {
                const double d = gap(K);
                return d > 0.0 ? 2.0 * kappa * G * ratio(K) / (c * s * d * d) : inf;
            };
            break;
        case IntegrandKind::ShiftSlope:
            out.f = [=](double k) {
                const double X = ker.resonance(k, v, kp);
                const double den = X * X + k2;
                return ker.g2(k) * (k - kp) * (k2 - X * X) / (den * den);
            };
            out.tail_bound = [=](double K) {
                const double d = gap(K);
                return d > 0.0 ? 2.0 * G * ratio(K) / (c * s * d) : inf;
            };
            break;
    }
    return out;
}

}  // namespace wgcool
