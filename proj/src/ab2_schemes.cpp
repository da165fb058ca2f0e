#include "fracab/ab2_schemes.hpp"

#include <cmath>
#include <string>

#include "fracab/special_functions.hpp"

namespace fracab {
namespace {

// sum_{k>=2} binom(p, k) x^(k-1) / p, for |x| <= 1/4.
double binomial_tail(double p, double x) {
    double coefficient = p;  // binom(p, 1)
    double power = 1.0;      // x^(k-1)
    double sum = 0.0;
    for (int k = 2; k < 80; ++k) {
        coefficient *= (p - k + 1) / k;
        power *= x;
        const double term = coefficient * power / p;
        sum += term;
        if (std::abs(term) <= 1e-17 * std::abs(sum)) break;
    }
    return sum;
}

// Brackets on the unit grid (h = 1); B_n = h^alpha * b, C_n = h^alpha * c.
//   b = 2(n+1)^a/a - (n+1)^(a+1)/(a+1) - n^a/a + n^(a+1)/(a+1)
//   c = (n+1)^a/a - (n+1)^(a+1)/(a+1) + n^(a+1)/(a+1)
// Written directly these cancel like n^(a+1) against O(1) near a = 1, so for
// larger n they are regrouped around the last interval.
struct UnitBrackets {
    double b;
    double c;
};

UnitBrackets unit_brackets(double a, std::int64_t n_int) {
    const double n = static_cast<double>(n_int);
    if (n_int < 4) {
        const double n1 = n + 1.0;
        const double b = 2.0 * std::pow(n1, a) / a - std::pow(n1, a + 1.0) / (a + 1.0) - std::pow(n, a) / a +
                         std::pow(n, a + 1.0) / (a + 1.0);
        const double c = std::pow(n1, a) / a - std::pow(n1, a + 1.0) / (a + 1.0) + std::pow(n, a + 1.0) / (a + 1.0);
        return {b, c};
    }
    const double inv_n = 1.0 / n;
    const double n_pow = std::pow(n, a);
    // (n+1)^a - n^a without cancellation
    const double diff_a = n_pow * std::expm1(a * std::log1p(inv_n));
    // int_n^{n+1} u^a du = n^a (1 + R), R = binomial_tail(a+1, 1/n)
    const double b = n_pow * ((1.0 - a) / a - binomial_tail(a + 1.0, inv_n)) + 2.0 * diff_a / a;
    // int_n^{n+1} u^a du = (n+1)^a (1 - S), S = -binomial_tail(a+1, -1/(n+1))
    const double s = -binomial_tail(a + 1.0, -1.0 / (n + 1.0));
    const double c = (n_pow + diff_a) * ((1.0 - a) / a + s);
    return {b, c};
}

void require_step_index(std::int64_t n) {
    if (n < 1) throw std::invalid_argument("two-step weights need n >= 1, got " + std::to_string(n));
}

void require_positive(double value, const char* name) {
    if (!(value > 0.0) || !std::isfinite(value)) {
        throw std::invalid_argument(std::string(name) + " must be positive and finite");
    }
}

StepWeights caputo_weights_printed(double a, double h, std::int64_t n) {
    const double t1 = static_cast<double>(n + 1) * h;
    const double t0 = static_cast<double>(n) * h;
    const double scale = 1.0 / (h * gamma(a));
    const double curr = 2.0 * h / a * std::pow(t1, a) - std::pow(t1, a + 1.0) / (a + 1.0) +
                        h / a * std::pow(t0, a) - std::pow(t0, a + 1.0) / a;
    const double prev = h / a * std::pow(t1, a) - std::pow(t1, a + 1.0) / (a + 1.0) + std::pow(t0, a) / (a + 1.0);
    return {scale * curr, scale * prev};
}

StepWeights abc_weights_printed(double a, double h, std::int64_t n, double norm) {
    const double t1 = static_cast<double>(n + 1) * h;
    const double t0 = static_cast<double>(n) * h;
    const double g = gamma(a);
    const double curr = (1.0 - a) / norm +
                        a / (norm * h) * (2.0 * h * std::pow(t1, a) / a - std::pow(t1, a + 1.0) / (a + 1.0)) -
                        a / (norm * g * h) * (h * std::pow(t0, a) / a - std::pow(t0, a + 1.0) / (a + 1.0));
    // The unbracketed t^(a+1) term is read as t_n^(a+1).
    const double prev = (a - 1.0) / norm - a / (h * g * norm) *
                                               (h * std::pow(t1, a) / a - std::pow(t1, a + 1.0) / (a + 1.0) +
                                                std::pow(t0, a + 1.0) / (h * g * norm));
    return {curr, prev};
}

}  // namespace

CaputoBrackets caputo_brackets(FractionalOrder alpha, double h, std::int64_t n) {
    require_step_index(n);
    require_positive(h, "step size h");
    const double a = alpha.value();
    const auto unit = unit_brackets(a, n);
    const double scale = std::pow(h, a);
    return {scale * unit.b, scale * unit.c};
}

StepWeights caputo_weights(FractionalOrder alpha, double h, std::int64_t n, FormulaVariant formula) {
    require_step_index(n);
    require_positive(h, "step size h");
    if (formula == FormulaVariant::PaperLiteral) return caputo_weights_printed(alpha.value(), h, n);
    const auto brackets = caputo_brackets(alpha, h, n);
    const double g = gamma(alpha.value());
    return {brackets.current / g, -brackets.previous / g};
}

StepWeights cf_weights(FractionalOrder alpha, double h, double norm, FormulaVariant formula) {
    require_positive(h, "step size h");
    require_positive(norm, "normalization");
    const double a = alpha.value();
    const double local = (1.0 - a) / norm;
    const double c_curr = local + 1.5 * a * h / norm;
    const double prev_magnitude = local + 0.5 * a * h / norm;
    return {c_curr, formula == FormulaVariant::PaperLiteral ? prev_magnitude : -prev_magnitude};
}

StepWeights abc_weights(FractionalOrder alpha, double h, std::int64_t n, double norm, FormulaVariant formula) {
    require_step_index(n);
    require_positive(h, "step size h");
    require_positive(norm, "normalization");
    const double a = alpha.value();
    if (formula == FormulaVariant::PaperLiteral) return abc_weights_printed(a, h, n, norm);
    const auto brackets = caputo_brackets(alpha, h, n);
    const double local = (1.0 - a) / norm;
    const double memory = a / (norm * gamma(a));
    return {local + memory * brackets.current, -(local + memory * brackets.previous)};
}

Problem::Problem(RhsFunction rhs_fn, Vector initial) : rhs(std::move(rhs_fn)), y0(std::move(initial)) {
    if (!rhs) throw std::invalid_argument("problem needs a right-hand side");
    if (y0.empty()) throw std::invalid_argument("problem dimension must be >= 1");
}

SchemeConfig::SchemeConfig(FractionalOrder alpha_, DerivativeKind kind_, double h_, double norm_,
                           FormulaVariant formula_)
    : alpha(alpha_), kind(kind_), h(h_), norm(norm_), formula(formula_) {
    require_positive(h, "step size h");
    require_positive(norm, "normalization");
}

StepWeights weights_for(const SchemeConfig& scheme, std::int64_t n) {
    switch (scheme.kind) {
        case DerivativeKind::Caputo: return caputo_weights(scheme.alpha, scheme.h, n, scheme.formula);
        case DerivativeKind::CaputoFabrizio: return cf_weights(scheme.alpha, scheme.h, scheme.norm, scheme.formula);
        case DerivativeKind::AtanganaBaleanuCaputo:
            return abc_weights(scheme.alpha, scheme.h, n, scheme.norm, scheme.formula);
    }
    return {0.0, 0.0};
}

StepperState bootstrap(const Problem& problem, const SchemeConfig& scheme, const BootstrapMode& mode) {
    const std::size_t dim = problem.dimension();
    const double a = scheme.alpha.value();
    const double h = scheme.h;

    StepperState state;
    state.f_prev.resize(dim);
    problem.rhs(0.0, problem.y0, state.f_prev);

    if (const auto* seed = std::get_if<ExactSeed>(&mode)) {
        if (seed->y1.size() != dim) throw std::invalid_argument("exact seed has the wrong dimension");
        state.y = seed->y1;
    } else {
        state.y = problem.y0;
        const Vector& f0 = state.f_prev;
        if (scheme.kind == DerivativeKind::Caputo) {
            const double w = std::pow(h, a) / gamma(a + 1.0);
            for (std::size_t i = 0; i < dim; ++i) state.y[i] += w * f0[i];
        } else {
            // Integral form differenced between t_0 and t_1: local term
            // (1-a)/norm [f(t_1, y_0) - f_0] plus a rectangle rule for the memory part.
            Vector probe(dim);
            problem.rhs(h, problem.y0, probe);
            const double local = (1.0 - a) / scheme.norm;
            const double memory = scheme.kind == DerivativeKind::CaputoFabrizio
                                      ? a * h / scheme.norm
                                      : a * std::pow(h, a) / (scheme.norm * gamma(a + 1.0));
            for (std::size_t i = 0; i < dim; ++i) state.y[i] += local * (probe[i] - f0[i]) + memory * f0[i];
        }
    }

    state.n = 1;
    state.t = h;
    state.f.resize(dim);
    problem.rhs(state.t, state.y, state.f);
    return state;
}

void step(StepperState& state, const Problem& problem, const SchemeConfig& scheme) {
    const auto w = weights_for(scheme, state.n);
    const std::size_t dim = state.y.size();
    for (std::size_t i = 0; i < dim; ++i) state.y[i] += w.c_curr * state.f[i] + w.c_prev * state.f_prev[i];
    state.n += 1;
    state.t = static_cast<double>(state.n) * scheme.h;
    state.f_prev.swap(state.f);
    problem.rhs(state.t, state.y, state.f);
}

std::int64_t step_count(double T, double h) {
    if (!(h > 0.0) || !(T >= 0.0)) throw std::invalid_argument("step_count needs h > 0 and T >= 0");
    return static_cast<std::int64_t>(std::floor(T / h + 1e-9));
}

void integrate(const Problem& problem, const SchemeConfig& scheme, double T, const BootstrapMode& mode,
               const Observer& observe) {
    const std::int64_t steps = step_count(T, scheme.h);
    if (steps < 2) throw std::invalid_argument("integrate needs T >= 2h");

    observe(0, 0.0, problem.y0);
    StepperState state = bootstrap(problem, scheme, mode);
    observe(state.n, state.t, state.y);

    if (scheme.kind == DerivativeKind::CaputoFabrizio) {
        // n-independent weights
        const auto w = cf_weights(scheme.alpha, scheme.h, scheme.norm, scheme.formula);
        const std::size_t dim = state.y.size();
        while (state.n < steps) {
            for (std::size_t i = 0; i < dim; ++i) state.y[i] += w.c_curr * state.f[i] + w.c_prev * state.f_prev[i];
            state.n += 1;
            state.t = static_cast<double>(state.n) * scheme.h;
            state.f_prev.swap(state.f);
            problem.rhs(state.t, state.y, state.f);
            observe(state.n, state.t, state.y);
        }
        return;
    }
    while (state.n < steps) {
        step(state, problem, scheme);
        observe(state.n, state.t, state.y);
    }
}

Trajectory integrate(const Problem& problem, const SchemeConfig& scheme, double T, const BootstrapMode& mode) {
    Trajectory out;
    const auto steps = step_count(T, scheme.h);
    out.times.reserve(static_cast<std::size_t>(steps) + 1);
    out.states.reserve(static_cast<std::size_t>(steps) + 1);
    integrate(problem, scheme, T, mode, [&](std::int64_t, double t, std::span<const double> y) {
        out.push_back(t, Vector(y.begin(), y.end()));
    });
    return out;
}

}  // namespace fracab
