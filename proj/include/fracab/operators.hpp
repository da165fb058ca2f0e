#pragma once

#include <functional>
#include <span>
#include <vector>

#include "fracab/types.hpp"

namespace fracab {

/// coefficient * t^exponent
struct Monomial {
    double coefficient;
    double exponent;
};

/// Caputo derivative of t^k in closed form: Gamma(k+1)/Gamma(k+1-alpha) * t^(k-alpha).
/// Requires k >= alpha.
[[nodiscard]] double caputo_derivative_power(double k, FractionalOrder alpha, double t);

/// Riemann-Liouville integral of t^k: Gamma(k+1)/Gamma(k+1+alpha) * t^(k+alpha).
[[nodiscard]] double rl_integral_power(double k, FractionalOrder alpha, double t);

/// Memory kernel K(s) of each derivative, s = t - tau >= 0:
///   Caputo                 s^(alpha-1)
///   CaputoFabrizio         exp(-alpha s / (1 - alpha))
///   AtanganaBaleanuCaputo  E_alpha(-alpha s^alpha / (1 - alpha))
[[nodiscard]] double memory_kernel(DerivativeKind kind, FractionalOrder alpha, double s);

/// int_0^t K(t - tau) g(tau) dtau to absolute tolerance `tol`.
///
/// The power and Mittag-Leffler kernels are integrated in the graded variable
/// u = (t - tau)^alpha, which removes the endpoint singularity at tau = t.
/// The two nonsingular kernels need alpha < 1 (std::domain_error otherwise).
[[nodiscard]] double kernel_weighted_integral(const std::function<double(double)>& g, FractionalOrder alpha,
                                              DerivativeKind kind, double t, double tol);

/// Fractional derivative of sum_i c_i t^(p_i) (all p_i >= 1) under the chosen kind.
///
/// Caputo uses the closed form term by term. CF and ABC apply
/// norm/(1-alpha) * kernel_weighted_integral to the classical derivative; at
/// alpha = 1 they fall back to the classical derivative.
[[nodiscard]] double fractional_derivative_of_exact_solution(DerivativeKind kind, FractionalOrder alpha,
                                                             std::span<const Monomial> time_part, double t,
                                                             double norm = 1.0, double tol = 1e-10);

}  // namespace fracab
