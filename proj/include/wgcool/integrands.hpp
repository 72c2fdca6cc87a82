#pragma once

// The k-integrands of the steady-state shift and of the mean force, plus
// their velocity derivatives, each paired with an analytic tail bound.
//
// With X = R(k) = delta_n(k) - (k - k_p) v:
//   Force            kappa (k_p - k) g^2 / (X^2 + kappa^2)
//   Broadening       kappa g^2 / (X^2 + kappa^2)
//   Shift            -g^2 X / (X^2 + kappa^2)
// and the *Slope kinds are their partial derivatives in v (dX/dv = k_p - k).
//
// Tail bounds: for |k| >= K, X >= s|k| - b with s = c - |v| and
// b = omega_p + |k_p v|, and g^2 <= G / (c |k|) with G = g^2 omega. Integrating
// the resulting majorants over both tails gives the closed forms used here.

#include "wgcool/model.hpp"
#include "wgcool/quadrature.hpp"

namespace wgcool {

enum class IntegrandKind { Force, Broadening, Shift, ForceSlope, BroadeningSlope, ShiftSlope };

[[nodiscard]] const char* to_string(IntegrandKind kind);

[[nodiscard]] BranchIntegrand make_integrand(IntegrandKind kind, const ModeKernel& kernel, double v,
                                             double k_p_signed, double kappa);

}  // namespace wgcool
