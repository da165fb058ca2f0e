#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace fracab {

using Vector = std::vector<double>;

/// Fractional order alpha restricted to the half-open interval (0, 1].
class FractionalOrder {
public:
    explicit FractionalOrder(double value) : value_(value) {
        if (!(value > 0.0 && value <= 1.0)) {
            throw std::invalid_argument("fractional order must lie in (0, 1], got " +
                                        std::to_string(value));
        }
    }

    [[nodiscard]] double value() const noexcept { return value_; }
    [[nodiscard]] bool is_classical() const noexcept { return value_ == 1.0; }

    friend bool operator==(FractionalOrder, FractionalOrder) = default;

private:
    double value_;
};

enum class DerivativeKind { Caputo, CaputoFabrizio, AtanganaBaleanuCaputo };

enum class NormalizationVariant {
    Unit,       // M(alpha) = 1
    GammaBlend  // B(alpha) = 1 - alpha + alpha / Gamma(alpha)
};

/// Selects between the corrected formulas and the ones typeset in the
/// original derivation (kept for side-by-side comparison only).
enum class FormulaVariant { Rederived, PaperLiteral };

[[nodiscard]] std::string_view to_string(DerivativeKind kind) noexcept;
[[nodiscard]] DerivativeKind parse_kind(std::string_view name);
[[nodiscard]] std::string_view to_string(NormalizationVariant variant) noexcept;
[[nodiscard]] NormalizationVariant parse_normalization(std::string_view name);

/// Sampled solution: times[k] paired with states[k].
struct Trajectory {
    std::vector<double> times;
    std::vector<Vector> states;

    [[nodiscard]] std::size_t size() const noexcept { return times.size(); }
    [[nodiscard]] bool empty() const noexcept { return times.empty(); }
    void push_back(double t, Vector y) {
        times.push_back(t);
        states.push_back(std::move(y));
    }
};

/// Iterative procedure (series, quadrature, fixed point) missed its target.
class ConvergenceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Explicit time stepping produced non-finite or runaway values.
class InstabilityError : public std::runtime_error {
public:
    InstabilityError(const std::string& what, std::size_t step, double time)
        : std::runtime_error(what), step_(step), time_(time) {}

    [[nodiscard]] std::size_t step() const noexcept { return step_; }
    [[nodiscard]] double time() const noexcept { return time_; }

private:
    std::size_t step_;
    double time_;
};

}  // namespace fracab
