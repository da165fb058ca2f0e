#pragma once

#include <cstddef>
#include <functional>

namespace fracab {

struct QuadratureResult {
    double value = 0.0;
    double error_estimate = 0.0;
    std::size_t evaluations = 0;
};

inline constexpr std::size_t kDefaultNodeBudget = 1'000'000;

/// Globally adaptive 7/15-point Gauss-Kronrod quadrature of f over [a, b].
///
/// Intervals with the largest Kronrod-Gauss discrepancy are bisected until the
/// summed estimate drops below abs_tol. Throws ConvergenceError when the
/// evaluation budget runs out first.
[[nodiscard]] QuadratureResult integrate_adaptive(const std::function<double(double)>& f,
                                                  double a, double b, double abs_tol,
                                                  std::size_t max_evaluations = kDefaultNodeBudget);

}  // namespace fracab
