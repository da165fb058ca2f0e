#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "fracab/ab2_schemes.hpp"
#include "fracab/types.hpp"

namespace fracab {

struct ErrorSample {
    double h;
    double error;
};

struct ErrorReport {
    double max_error = 0.0;
    std::vector<ErrorSample> errors_by_h;                          // decreasing h
    std::vector<double> observed_orders;                           // one fewer than errors_by_h
    std::vector<std::pair<std::int64_t, double>> bound_values;     // (n, bound)
};

/// Which exponent the Caputo remainder bound uses on its second term:
/// n^alpha (Proof) or n^2 (Printed, as in the theorem statement).
enum class BoundVariant { Proof, Printed };

/// h^(3+alpha) M ((n+1)^alpha + n^alpha) / (12 Gamma(alpha+1)); M bounds |f'''|.
[[nodiscard]] double caputo_remainder_bound(FractionalOrder alpha, double h, std::int64_t n, double M,
                                            BoundVariant variant = BoundVariant::Proof);

/// (alpha / norm) (n+1)! h^(n+1) M. Grows factorially; diagnostic only.
/// Throws std::overflow_error for n > 20.
[[nodiscard]] double cf_remainder_bound(double alpha, double h, std::int64_t n, double M, double norm);

struct GapEntry {
    std::int64_t n;
    double rhs_gap;          // |f_n - f_{n-1}|_inf
    double state_increment;  // |y_n - y_{n-1}|_inf
};

/// Successive right-hand-side gaps and state increments along a trajectory.
[[nodiscard]] std::vector<GapEntry> stability_gap(const Trajectory& traj, const RhsFunction& rhs);

using ExactFunction = std::function<Vector(double t)>;

/// max over nodes of |y_k - exact(t_k)|_inf
[[nodiscard]] double max_error(const Trajectory& traj, const ExactFunction& exact);

/// Same, against another trajectory sampled on identical times.
[[nodiscard]] double max_error(const Trajectory& traj, const Trajectory& reference);

/// log(e_i / e_{i+1}) / log(h_i / h_{i+1}) for successive entries.
[[nodiscard]] std::vector<double> observed_order(std::span<const ErrorSample> errors_by_h);

/// Sorts by decreasing h and fills observed orders; max_error is the largest error.
[[nodiscard]] ErrorReport make_report(std::vector<ErrorSample> errors_by_h);

/// Local defects of the two-step update along a reference trajectory:
///   d_n = |y(t_{n+1}) - y(t_n) - c_curr f(t_n, y_n) - c_prev f(t_{n-1}, y_{n-1})|_inf
/// for n = 1 .. size-2. Entry k of the result belongs to n = k + 1.
[[nodiscard]] std::vector<double> local_defects(const Trajectory& reference, const Problem& problem,
                                                const SchemeConfig& scheme);

}  // namespace fracab
