#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <variant>

#include "fracab/types.hpp"

namespace fracab {

/// Two-step update coefficients: y_{n+1} = y_n + c_curr f_n + c_prev f_{n-1}.
struct StepWeights {
    double c_curr;
    double c_prev;
};

/// Gamma-free brackets of the power-kernel update, B_n and C_n:
/// caputo weights are (B_n / Gamma(alpha), -C_n / Gamma(alpha)).
struct CaputoBrackets {
    double current;
    double previous;
};

[[nodiscard]] CaputoBrackets caputo_brackets(FractionalOrder alpha, double h, std::int64_t n);

[[nodiscard]] StepWeights caputo_weights(FractionalOrder alpha, double h, std::int64_t n,
                                         FormulaVariant formula = FormulaVariant::Rederived);

[[nodiscard]] StepWeights cf_weights(FractionalOrder alpha, double h, double norm,
                                     FormulaVariant formula = FormulaVariant::Rederived);

[[nodiscard]] StepWeights abc_weights(FractionalOrder alpha, double h, std::int64_t n, double norm,
                                      FormulaVariant formula = FormulaVariant::Rederived);

/// rhs(t, y, out) writes f(t, y) into out; out has the dimension of y.
using RhsFunction = std::function<void(double t, std::span<const double> y, std::span<double> out)>;

struct Problem {
    Problem(RhsFunction rhs_fn, Vector initial);

    RhsFunction rhs;
    Vector y0;

    [[nodiscard]] std::size_t dimension() const noexcept { return y0.size(); }
};

struct SchemeConfig {
    SchemeConfig(FractionalOrder alpha_, DerivativeKind kind_, double h_, double norm_ = 1.0,
                 FormulaVariant formula_ = FormulaVariant::Rederived);

    FractionalOrder alpha;
    DerivativeKind kind;
    double h;
    double norm;
    FormulaVariant formula;
};

[[nodiscard]] StepWeights weights_for(const SchemeConfig& scheme, std::int64_t n);

/// Everything the two-step update needs; nothing older than f_{n-1} is kept.
struct StepperState {
    std::int64_t n = 0;
    double t = 0.0;
    Vector y;
    Vector f;
    Vector f_prev;
};

/// One-step rectangle start on the kernel's integral form.
struct FractionalEuler {};
/// Externally supplied y_1 (manufactured-solution runs).
struct ExactSeed {
    Vector y1;
};
using BootstrapMode = std::variant<FractionalEuler, ExactSeed>;

[[nodiscard]] StepperState bootstrap(const Problem& problem, const SchemeConfig& scheme,
                                     const BootstrapMode& mode = FractionalEuler{});

/// Advances state from n to n + 1 in place.
void step(StepperState& state, const Problem& problem, const SchemeConfig& scheme);

/// Number of uniform steps of size h that fit in [0, T].
[[nodiscard]] std::int64_t step_count(double T, double h);

using Observer = std::function<void(std::int64_t n, double t, std::span<const double> y)>;

/// Streams (n, t_n, y_n) for n = 0 .. floor(T/h) to `observe`. Memory use is
/// independent of the number of steps.
void integrate(const Problem& problem, const SchemeConfig& scheme, double T, const BootstrapMode& mode,
               const Observer& observe);

[[nodiscard]] Trajectory integrate(const Problem& problem, const SchemeConfig& scheme, double T,
                                   const BootstrapMode& mode = FractionalEuler{});

}  // namespace fracab
