#include "fracab/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fracab/special_functions.hpp"

namespace fracab {
namespace {

// y(t) = y0 + local [f(t, y(t)) - f(0, y0)] + history * (I^a f)(t),
// with (I^a f)(t) = (1/Gamma(a)) int_0^t (t - s)^(a-1) f(s, y(s)) ds.
struct VolterraForm {
    double local;
    double history;
    double kernel_order;
};

// sum_{k>=2, k even if `even_only`} binom(p, k) x^k
double binomial_remainder(double p, double x, bool even_only) {
    double coefficient = p;
    double power = x;
    double sum = 0.0;
    for (int k = 2; k < 120; ++k) {
        coefficient *= (p - k + 1) / k;
        power *= x;
        if (even_only && k % 2 == 1) continue;
        const double term = coefficient * power;
        sum += term;
        if (std::abs(term) <= 1e-18 * std::abs(sum)) break;
    }
    return even_only ? 2.0 * sum : sum;
}

// Product-trapezoid weights on the unit grid: node m gets
//   a0(m) f_0 + sum_{j=1}^{m-1} K(m-j) f_j + f_m,  all times delta^a / Gamma(a+2).
double trapezoid_first_weight(double a, std::int64_t m) {
    const double md = static_cast<double>(m);
    if (m < 4) return std::pow(md - 1.0, a + 1.0) - (md - 1.0 - a) * std::pow(md, a);
    return std::pow(md, a + 1.0) * binomial_remainder(a + 1.0, -1.0 / md, false);
}

double trapezoid_interior_weight(double a, std::int64_t d) {
    const double dd = static_cast<double>(d);
    if (d < 4) {
        return std::pow(dd + 1.0, a + 1.0) - 2.0 * std::pow(dd, a + 1.0) + std::pow(dd - 1.0, a + 1.0);
    }
    return std::pow(dd, a + 1.0) * binomial_remainder(a + 1.0, 1.0 / dd, true);
}

double max_abs(const Vector& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

Trajectory solve_volterra(const Problem& problem, const VolterraForm& form, double h, double T,
                          const ReferenceConfig& cfg) {
    cfg.validate();
    const std::int64_t steps = step_count(T, h);
    if (steps < 1) throw std::invalid_argument("reference needs T >= h");

    const std::size_t dim = problem.dimension();
    const auto substeps = static_cast<std::int64_t>(cfg.substeps);
    const std::int64_t fine_count = steps * substeps;
    const double delta = h / static_cast<double>(substeps);
    const double a = form.kernel_order;
    const bool plain_trapezoid = a == 1.0;

    std::vector<double> interior;
    double scale = 0.5 * delta;  // weight of f_m
    if (!plain_trapezoid) {
        scale = std::pow(delta, a) / gamma(a + 2.0);
        interior.resize(static_cast<std::size_t>(fine_count) + 1);
        for (std::int64_t d = 1; d < fine_count; ++d) interior[d] = trapezoid_interior_weight(a, d);
    }

    // f at every fine node, row-major (the full memory)
    std::vector<double> history(static_cast<std::size_t>(fine_count + 1) * dim);
    auto f_row = [&](std::int64_t m) { return std::span<double>(history.data() + m * dim, dim); };

    problem.rhs(0.0, problem.y0, f_row(0));
    const Vector f0(f_row(0).begin(), f_row(0).end());

    Trajectory out;
    out.push_back(0.0, problem.y0);

    Vector y_prev = problem.y0;
    Vector y_prev2 = problem.y0;
    Vector running(dim, 0.0);  // plain trapezoid: f_0/2 + f_1 + ... + f_{m-1}
    for (std::size_t i = 0; i < dim; ++i) running[i] = 0.5 * f0[i];

    Vector known(dim), y(dim), image(dim), fy(dim);
    const double implicit_weight = form.local + form.history * scale;

    for (std::int64_t m = 1; m <= fine_count; ++m) {
        const double t = static_cast<double>(m) * delta;

        // known part of the right-hand side
        for (std::size_t i = 0; i < dim; ++i) known[i] = problem.y0[i] - form.local * f0[i];
        if (plain_trapezoid) {
            for (std::size_t i = 0; i < dim; ++i) known[i] += form.history * delta * running[i];
        } else {
            Vector acc(dim, 0.0);
            const double w0 = trapezoid_first_weight(a, m);
            for (std::size_t i = 0; i < dim; ++i) acc[i] = w0 * f0[i];
            for (std::int64_t j = 1; j < m; ++j) {
                const double w = interior[m - j];
                const double* fj = history.data() + j * dim;
                for (std::size_t i = 0; i < dim; ++i) acc[i] += w * fj[i];
            }
            for (std::size_t i = 0; i < dim; ++i) known[i] += form.history * scale * acc[i];
        }

        // damped fixed point on y = known + implicit_weight f(t, y)
        for (std::size_t i = 0; i < dim; ++i) y[i] = m >= 2 ? 2.0 * y_prev[i] - y_prev2[i] : y_prev[i];
        bool converged = false;
        for (int iteration = 0; iteration < 200; ++iteration) {
            problem.rhs(t, y, fy);
            double residual = 0.0;
            for (std::size_t i = 0; i < dim; ++i) {
                image[i] = known[i] + implicit_weight * fy[i];
                residual = std::max(residual, std::abs(image[i] - y[i]));
            }
            if (!std::isfinite(residual)) break;
            if (residual <= cfg.tol * std::max(1.0, max_abs(image))) {
                y.swap(image);
                converged = true;
                break;
            }
            for (std::size_t i = 0; i < dim; ++i) y[i] = 0.5 * (y[i] + image[i]);
        }
        if (!converged) {
            throw ConvergenceError("reference fixed point did not converge at t = " + std::to_string(t));
        }

        problem.rhs(t, y, f_row(m));
        if (plain_trapezoid) {
            const auto fm = f_row(m);
            for (std::size_t i = 0; i < dim; ++i) running[i] += fm[i];
        }
        y_prev2.swap(y_prev);
        y_prev = y;
        if (m % substeps == 0) out.push_back(static_cast<double>(m / substeps) * h, y);
    }
    return out;
}

}  // namespace

void ReferenceConfig::validate() const {
    if (substeps < 1) throw std::invalid_argument("reference substeps must be >= 1");
    if (!(tol > 0.0)) throw std::invalid_argument("reference tolerance must be positive");
}

Trajectory caputo_reference(const Problem& problem, FractionalOrder alpha, double h, double T,
                            const ReferenceConfig& cfg) {
    return solve_volterra(problem, {0.0, 1.0, alpha.value()}, h, T, cfg);
}

Trajectory cf_reference(const Problem& problem, FractionalOrder alpha, double h, double T, double norm,
                        const ReferenceConfig& cfg) {
    if (!(norm > 0.0)) throw std::invalid_argument("normalization must be positive");
    const double a = alpha.value();
    return solve_volterra(problem, {(1.0 - a) / norm, a / norm, 1.0}, h, T, cfg);
}

Trajectory abc_reference(const Problem& problem, FractionalOrder alpha, double h, double T, double norm,
                         const ReferenceConfig& cfg) {
    if (!(norm > 0.0)) throw std::invalid_argument("normalization must be positive");
    const double a = alpha.value();
    return solve_volterra(problem, {(1.0 - a) / norm, a / norm, a}, h, T, cfg);
}

Trajectory reference_solution(const Problem& problem, const SchemeConfig& scheme, double T,
                              const ReferenceConfig& cfg) {
    switch (scheme.kind) {
        case DerivativeKind::Caputo: return caputo_reference(problem, scheme.alpha, scheme.h, T, cfg);
        case DerivativeKind::CaputoFabrizio:
            return cf_reference(problem, scheme.alpha, scheme.h, T, scheme.norm, cfg);
        case DerivativeKind::AtanganaBaleanuCaputo:
            return abc_reference(problem, scheme.alpha, scheme.h, T, scheme.norm, cfg);
    }
    return {};
}

Trajectory classical_ab2(const Problem& problem, double h, double T) {
    const std::int64_t steps = step_count(T, h);
    if (steps < 2) throw std::invalid_argument("classical_ab2 needs T >= 2h");
    const std::size_t dim = problem.dimension();

    Trajectory out;
    out.push_back(0.0, problem.y0);
    Vector f_prev(dim), f(dim);
    Vector y = problem.y0;
    problem.rhs(0.0, y, f_prev);
    for (std::size_t i = 0; i < dim; ++i) y[i] += h * f_prev[i];
    out.push_back(h, y);
    problem.rhs(h, y, f);

    for (std::int64_t n = 1; n < steps; ++n) {
        for (std::size_t i = 0; i < dim; ++i) y[i] += 1.5 * h * f[i] - 0.5 * h * f_prev[i];
        const double t = static_cast<double>(n + 1) * h;
        out.push_back(t, y);
        f_prev.swap(f);
        problem.rhs(t, y, f);
    }
    return out;
}

}  // namespace fracab
