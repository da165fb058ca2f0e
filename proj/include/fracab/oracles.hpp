#pragma once

#include "fracab/ab2_schemes.hpp"
#include "fracab/types.hpp"

namespace fracab {

struct ReferenceConfig {
    int substeps = 32;  // fine cells per scheme step
    double tol = 1e-13; // fixed-point tolerance per fine node (max norm)

    void validate() const;
};

// Full-memory references. Each solves the integral form of its kernel on the
// fine grid h/substeps with a product-trapezoid rule and returns the values at
// the coarse nodes n*h, n = 0 .. floor(T/h).
//
// The nonsingular kernels use the local term (1-alpha)/norm [f(t, y(t)) - f(0, y0)],
// which coincides with the plain form whenever f(0, y0) = 0 (the compatibility
// condition of those derivatives) and stays well posed otherwise.

[[nodiscard]] Trajectory caputo_reference(const Problem& problem, FractionalOrder alpha, double h, double T,
                                          const ReferenceConfig& cfg = {});

[[nodiscard]] Trajectory cf_reference(const Problem& problem, FractionalOrder alpha, double h, double T,
                                      double norm, const ReferenceConfig& cfg = {});

[[nodiscard]] Trajectory abc_reference(const Problem& problem, FractionalOrder alpha, double h, double T,
                                       double norm, const ReferenceConfig& cfg = {});

/// Dispatches on scheme.kind, using scheme.h and scheme.norm.
[[nodiscard]] Trajectory reference_solution(const Problem& problem, const SchemeConfig& scheme, double T,
                                            const ReferenceConfig& cfg = {});

/// y_{n+1} = y_n + h (3 f_n - f_{n-1}) / 2 after one explicit Euler step.
[[nodiscard]] Trajectory classical_ab2(const Problem& problem, double h, double T);

}  // namespace fracab
