#pragma once

#include <optional>
#include <span>

#include "fracab/ab2_schemes.hpp"
#include "fracab/error_analysis.hpp"
#include "fracab/types.hpp"

namespace fracab {

// Fractional Fisher equation  D_t^alpha u = delta u_xx + u (1 - u) + f  on [0, L]
// with the manufactured solution
//   u(x, t) = (t^tau + 1) cos(5 pi x) + t^4 x^2 + t^3 x
// and Neumann data taken from it.

enum class ForcingMode {
    PaperLiteral,           // the published forcing expression, verbatim
    ConsistentManufactured  // regenerated from u for the configured delta, alpha and kernel
};

enum class SeedMode { FractionalEuler, Exact };

enum class BoundarySide { Left, Right };

[[nodiscard]] std::string_view to_string(ForcingMode mode) noexcept;
[[nodiscard]] ForcingMode parse_forcing(std::string_view name);  // "literal" | "consistent"
[[nodiscard]] std::string_view to_string(SeedMode mode) noexcept;
[[nodiscard]] SeedMode parse_seed(std::string_view name);  // "euler" | "exact"

struct FisherConfig {
    double delta = 10.0;
    double tau = 1.0;
    FractionalOrder alpha{0.35};
    double L = 1.0;
    int N = 100;
    double dt = 0.25;
    double T = 0.5;
    DerivativeKind kind = DerivativeKind::Caputo;
    ForcingMode forcing = ForcingMode::ConsistentManufactured;
    std::optional<NormalizationVariant> norm_variant;  // unset: the kernel's default
    SeedMode seed = SeedMode::Exact;
    FormulaVariant formula = FormulaVariant::Rederived;

    [[nodiscard]] double dx() const noexcept { return L / N; }
    [[nodiscard]] double norm() const;
    /// Throws std::invalid_argument on a violated invariant.
    void validate() const;
};

[[nodiscard]] double exact_solution(double x, double t, double tau);

/// u_x of the manufactured solution at any x.
[[nodiscard]] double exact_gradient(double x, double t, double tau);

/// Boundary slopes on the unit interval: t^3 on the left, 2t^4 + t^3 on the right.
[[nodiscard]] double exact_neumann(BoundarySide side, double t, double tau);

/// Second difference with second-order ghost-node Neumann closure:
///   u_{-1} = u_1 - 2 dx g_left,  u_{N+1} = u_{N-1} + 2 dx g_right.
[[nodiscard]] Vector laplacian_neumann(std::span<const double> u, double dx, double g_left, double g_right);

void laplacian_neumann(std::span<const double> u, double dx, double g_left, double g_right, std::span<double> out);

/// Time-dependent pieces of the forcing, computed once per t and reused at every node.
class ForcingEvaluator {
public:
    explicit ForcingEvaluator(const FisherConfig& cfg);

    void set_time(double t);
    [[nodiscard]] double operator()(double x) const;

private:
    FisherConfig cfg_;
    double t_ = -1.0;
    double d_cos_ = 0.0;  // fractional derivative of t^tau
    double d_x2_ = 0.0;   // of t^4
    double d_x_ = 0.0;    // of t^3
};

[[nodiscard]] double forcing(double x, double t, const FisherConfig& cfg);

/// consistent - literal, split into its sources.
struct ForcingDiscrepancy {
    double diffusion;  // (delta - 1)(25 pi^2 (t^tau+1) cos - 2 t^4): the printed form assumes delta = 1
    double square;     // cos^2 [(t^tau+1)^2 - (t^(tau+1))^2]
    double cross;      // 2 t^4 x^2 cos [(t^tau+1) - t^(tau+1)]
    [[nodiscard]] double total() const noexcept { return diffusion + square + cross; }
};

/// Caputo-kernel discrepancy between the two forcing modes at (x, t).
[[nodiscard]] ForcingDiscrepancy forcing_discrepancy(double x, double t, double delta, double tau);

/// Largest stable explicit step for the diffusion part alone, dx^2 / (4 delta)
/// (the two-step scheme's real stability interval is [-1, 0] in units of h).
/// Infinite when delta = 0.
[[nodiscard]] double dt_max(double delta, double dx);

struct FisherResult {
    Vector x;
    Trajectory trajectory;  // every time node, N+1 values each
    ErrorReport report;     // max_error over all nodes and times
    double final_error = 0.0;
    double dt_max = 0.0;
};

/// Method of lines with the configured two-step scheme. Throws InstabilityError
/// when a nodal value leaves |u| <= 1e8 or turns non-finite; `partial`, when
/// given, receives the steps completed before that.
[[nodiscard]] FisherResult solve_fisher(const FisherConfig& cfg, Trajectory* partial = nullptr);

/// max_i |D^alpha u(x_i, t) - F_i(u(., t), t)| where F is the semidiscrete right-hand side:
/// the truncation left by substituting the exact solution into the spatial discretization.
[[nodiscard]] double manufactured_residual(const FisherConfig& cfg, double t);

/// 1.1 (25 pi^2)^2 (t^tau + 1) dx^2 / 12
[[nodiscard]] double manufactured_residual_bound(double tau, double dx, double t);

}  // namespace fracab
