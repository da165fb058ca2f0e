#include "fracab/operators.hpp"

#include <cmath>
#include <string>

#include "fracab/quadrature.hpp"
#include "fracab/special_functions.hpp"

namespace fracab {

double caputo_derivative_power(double k, FractionalOrder alpha, double t) {
    const double a = alpha.value();
    if (k < a) throw std::domain_error("caputo_derivative_power: exponent must be >= alpha");
    if (t < 0.0) throw std::domain_error("caputo_derivative_power: t must be nonnegative");
    if (t == 0.0) return k == a ? gamma(k + 1.0) : 0.0;
    return gamma(k + 1.0) / gamma(k + 1.0 - a) * std::pow(t, k - a);
}

double rl_integral_power(double k, FractionalOrder alpha, double t) {
    const double a = alpha.value();
    if (k < 0.0) throw std::domain_error("rl_integral_power: exponent must be nonnegative");
    if (t < 0.0) throw std::domain_error("rl_integral_power: t must be nonnegative");
    return gamma(k + 1.0) / gamma(k + 1.0 + a) * std::pow(t, k + a);
}

double memory_kernel(DerivativeKind kind, FractionalOrder alpha, double s) {
    const double a = alpha.value();
    switch (kind) {
        case DerivativeKind::Caputo:
            return std::pow(s, a - 1.0);
        case DerivativeKind::CaputoFabrizio:
            if (alpha.is_classical()) throw std::domain_error("exponential kernel needs alpha < 1");
            return std::exp(-a * s / (1.0 - a));
        case DerivativeKind::AtanganaBaleanuCaputo:
            if (alpha.is_classical()) throw std::domain_error("Mittag-Leffler kernel needs alpha < 1");
            return mittag_leffler(alpha, -a * std::pow(s, a) / (1.0 - a));
    }
    return 0.0;
}

double kernel_weighted_integral(const std::function<double(double)>& g, FractionalOrder alpha,
                                DerivativeKind kind, double t, double tol) {
    if (!(tol > 0.0)) throw std::invalid_argument("kernel_weighted_integral: tol must be positive");
    if (t < 0.0) throw std::domain_error("kernel_weighted_integral: t must be nonnegative");
    if (kind != DerivativeKind::Caputo && alpha.is_classical()) {
        throw std::domain_error("kernel_weighted_integral: nonsingular kernels are undefined at alpha = 1");
    }
    if (t == 0.0) return 0.0;

    const double a = alpha.value();
    const double inv_a = 1.0 / a;
    const double upper = std::pow(t, a);

    switch (kind) {
        case DerivativeKind::Caputo: {
            // s^(a-1) ds = du / a with s = u^(1/a)
            auto integrand = [&](double u) { return g(t - std::pow(u, inv_a)); };
            return inv_a * integrate_adaptive(integrand, 0.0, upper, a * tol).value;
        }
        case DerivativeKind::CaputoFabrizio: {
            const double rate = a / (1.0 - a);
            auto integrand = [&](double s) { return std::exp(-rate * s) * g(t - s); };
            return integrate_adaptive(integrand, 0.0, t, tol).value;
        }
        case DerivativeKind::AtanganaBaleanuCaputo: {
            const double scale = a / (1.0 - a);
            auto integrand = [&](double u) {
                return mittag_leffler(alpha, -scale * u) * g(t - std::pow(u, inv_a)) * std::pow(u, inv_a - 1.0);
            };
            return inv_a * integrate_adaptive(integrand, 0.0, upper, a * tol).value;
        }
    }
    return 0.0;
}

double fractional_derivative_of_exact_solution(DerivativeKind kind, FractionalOrder alpha,
                                               std::span<const Monomial> time_part, double t, double norm,
                                               double tol) {
    for (const auto& m : time_part) {
        if (m.exponent < 1.0) throw std::domain_error("monomial exponents must be >= 1");
    }
    if (time_part.empty()) return 0.0;

    if (kind == DerivativeKind::Caputo) {
        double sum = 0.0;
        for (const auto& m : time_part) sum += m.coefficient * caputo_derivative_power(m.exponent, alpha, t);
        return sum;
    }

    auto classical_derivative = [&](double tau) {
        double sum = 0.0;
        for (const auto& m : time_part) {
            sum += m.coefficient * m.exponent * (m.exponent == 1.0 ? 1.0 : std::pow(tau, m.exponent - 1.0));
        }
        return sum;
    };
    if (alpha.is_classical()) return classical_derivative(t);

    const double a = alpha.value();
    const double factor = norm / (1.0 - a);
    return factor * kernel_weighted_integral(classical_derivative, alpha, kind, t, tol / factor);
}

}  // namespace fracab
