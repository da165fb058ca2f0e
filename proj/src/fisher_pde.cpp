#include "fracab/fisher_pde.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <numbers>
#include <string>

#include "fracab/operators.hpp"
#include "fracab/special_functions.hpp"

namespace fracab {
namespace {

constexpr double kFivePi = 5.0 * std::numbers::pi;
constexpr double kBlowUp = 1e8;

double time_part(double t, double tau) { return std::pow(t, tau) + 1.0; }

// u_xx of the manufactured solution
double exact_second_derivative(double x, double t, double tau) {
    return -kFivePi * kFivePi * time_part(t, tau) * std::cos(kFivePi * x) + 2.0 * std::pow(t, 4);
}

double fractional_monomial(const FisherConfig& cfg, double exponent, double t) {
    const Monomial m{1.0, exponent};
    return fractional_derivative_of_exact_solution(cfg.kind, cfg.alpha, std::span<const Monomial>(&m, 1), t,
                                                   cfg.norm(), 1e-12);
}

double literal_forcing(double x, double t, const FisherConfig& cfg) {
    const double a = cfg.alpha.value();
    const double tau = cfg.tau;
    const double c = std::cos(kFivePi * x);
    const double A = time_part(t, tau);
    const double t_tau1 = std::pow(t, tau + 1.0);
    const double t3 = t * t * t;
    const double t4 = t3 * t;
    const double bracket = gamma(tau + 1.0) / gamma(tau + 1.0 - a) * std::pow(t, tau - a) +
                           25.0 * std::numbers::pi * std::numbers::pi * A - A + t_tau1 * t_tau1 * c +
                           2.0 * t3 * A * x + 2.0 * t4 * t_tau1 * x * x;
    return c * bracket + gamma(5.0) / gamma(5.0 - a) * std::pow(t, 4.0 - a) * x * x +
           gamma(4.0) / gamma(4.0 - a) * std::pow(t, 3.0 - a) * x - 2.0 * t4 - x * x * t4 - t3 * x +
           std::pow(t, 6) * x * x + std::pow(t, 8) * std::pow(x, 4) + 2.0 * std::pow(t, 7) * x * x * x;
}

void check_field(std::span<const double> u, std::int64_t n, double t) {
    for (double v : u) {
        if (!std::isfinite(v) || std::abs(v) > kBlowUp) {
            throw InstabilityError("solution left |u| <= 1e8 at step " + std::to_string(n) + ", t = " +
                                       std::to_string(t),
                                   static_cast<std::size_t>(n), t);
        }
    }
}

}  // namespace

std::string_view to_string(ForcingMode mode) noexcept {
    return mode == ForcingMode::PaperLiteral ? "literal" : "consistent";
}

ForcingMode parse_forcing(std::string_view name) {
    if (name == "literal") return ForcingMode::PaperLiteral;
    if (name == "consistent") return ForcingMode::ConsistentManufactured;
    throw std::invalid_argument("unknown forcing mode '" + std::string(name) + "' (literal|consistent)");
}

std::string_view to_string(SeedMode mode) noexcept { return mode == SeedMode::Exact ? "exact" : "euler"; }

SeedMode parse_seed(std::string_view name) {
    if (name == "exact") return SeedMode::Exact;
    if (name == "euler") return SeedMode::FractionalEuler;
    throw std::invalid_argument("unknown seed mode '" + std::string(name) + "' (euler|exact)");
}

double FisherConfig::norm() const {
    if (kind == DerivativeKind::Caputo) return 1.0;
    return normalization(alpha.value(), norm_variant.value_or(default_normalization(kind)));
}

void FisherConfig::validate() const {
    if (!(delta >= 0.0) || !std::isfinite(delta)) throw std::invalid_argument("delta must be nonnegative");
    if (!(tau >= 1.0)) throw std::invalid_argument("tau must be >= 1");
    if (!(L > 0.0)) throw std::invalid_argument("L must be positive");
    if (N < 4) throw std::invalid_argument("N must be >= 4, got " + std::to_string(N));
    if (!(dt > 0.0)) throw std::invalid_argument("dt must be positive");
    if (!(T > 0.0)) throw std::invalid_argument("T must be positive");
    if (step_count(T, dt) < 2) throw std::invalid_argument("T must be at least 2 dt");
    if (kind != DerivativeKind::Caputo && alpha.is_classical() && norm() != 1.0) {
        throw std::invalid_argument("normalization must be 1 at alpha = 1");
    }
}

double exact_solution(double x, double t, double tau) {
    return time_part(t, tau) * std::cos(kFivePi * x) + std::pow(t, 4) * x * x + std::pow(t, 3) * x;
}

double exact_gradient(double x, double t, double tau) {
    return -kFivePi * time_part(t, tau) * std::sin(kFivePi * x) + 2.0 * std::pow(t, 4) * x + std::pow(t, 3);
}

double exact_neumann(BoundarySide side, double t, double /*tau*/) {
    const double t3 = t * t * t;
    return side == BoundarySide::Left ? t3 : 2.0 * t3 * t + t3;
}

void laplacian_neumann(std::span<const double> u, double dx, double g_left, double g_right, std::span<double> out) {
    const std::size_t n = u.size();
    if (n < 3) throw std::invalid_argument("laplacian_neumann needs at least 3 nodes");
    if (out.size() != n) throw std::invalid_argument("laplacian_neumann output has the wrong size");
    const double inv = 1.0 / (dx * dx);
    out[0] = 2.0 * (u[1] - u[0] - dx * g_left) * inv;
    for (std::size_t i = 1; i + 1 < n; ++i) out[i] = (u[i + 1] - 2.0 * u[i] + u[i - 1]) * inv;
    out[n - 1] = 2.0 * (u[n - 2] - u[n - 1] + dx * g_right) * inv;
}

Vector laplacian_neumann(std::span<const double> u, double dx, double g_left, double g_right) {
    Vector out(u.size());
    laplacian_neumann(u, dx, g_left, g_right, out);
    return out;
}

ForcingEvaluator::ForcingEvaluator(const FisherConfig& cfg) : cfg_(cfg) {}

void ForcingEvaluator::set_time(double t) {
    if (t == t_) return;
    t_ = t;
    if (cfg_.forcing == ForcingMode::ConsistentManufactured) {
        d_cos_ = fractional_monomial(cfg_, cfg_.tau, t);
        d_x2_ = fractional_monomial(cfg_, 4.0, t);
        d_x_ = fractional_monomial(cfg_, 3.0, t);
    }
}

double ForcingEvaluator::operator()(double x) const {
    if (cfg_.forcing == ForcingMode::PaperLiteral) return literal_forcing(x, t_, cfg_);
    const double u = exact_solution(x, t_, cfg_.tau);
    const double d = d_cos_ * std::cos(kFivePi * x) + d_x2_ * x * x + d_x_ * x;
    return d - cfg_.delta * exact_second_derivative(x, t_, cfg_.tau) - u * (1.0 - u);
}

double forcing(double x, double t, const FisherConfig& cfg) {
    if (t < 0.0) throw std::domain_error("forcing: t must be nonnegative");
    ForcingEvaluator f(cfg);
    f.set_time(t);
    return f(x);
}

ForcingDiscrepancy forcing_discrepancy(double x, double t, double delta, double tau) {
    const double c = std::cos(kFivePi * x);
    const double A = time_part(t, tau);
    const double t_tau1 = std::pow(t, tau + 1.0);
    const double t4 = std::pow(t, 4);
    return {(delta - 1.0) * (25.0 * std::numbers::pi * std::numbers::pi * A * c - 2.0 * t4),
            c * c * (A * A - t_tau1 * t_tau1), 2.0 * t4 * x * x * c * (A - t_tau1)};
}

double dt_max(double delta, double dx) {
    if (!(delta >= 0.0) || !(dx > 0.0)) throw std::invalid_argument("dt_max needs delta >= 0 and dx > 0");
    if (delta == 0.0) return std::numeric_limits<double>::infinity();
    return dx * dx / (4.0 * delta);
}

namespace {

Problem semidiscrete_problem(const FisherConfig& cfg, std::shared_ptr<ForcingEvaluator> force,
                             std::shared_ptr<Vector> x) {
    const double dx = cfg.dx();
    auto rhs = [cfg, force, x, dx](double t, std::span<const double> u, std::span<double> out) {
        laplacian_neumann(u, dx, exact_gradient(0.0, t, cfg.tau), exact_gradient(cfg.L, t, cfg.tau), out);
        force->set_time(t);
        for (std::size_t i = 0; i < u.size(); ++i) {
            out[i] = cfg.delta * out[i] + u[i] * (1.0 - u[i]) + (*force)((*x)[i]);
        }
    };
    Vector u0(x->size());
    for (std::size_t i = 0; i < x->size(); ++i) u0[i] = exact_solution((*x)[i], 0.0, cfg.tau);
    return Problem(std::move(rhs), std::move(u0));
}

std::shared_ptr<Vector> make_grid(const FisherConfig& cfg) {
    auto x = std::make_shared<Vector>(static_cast<std::size_t>(cfg.N) + 1);
    for (int i = 0; i <= cfg.N; ++i) (*x)[i] = static_cast<double>(i) * cfg.dx();
    return x;
}

}  // namespace

FisherResult solve_fisher(const FisherConfig& cfg, Trajectory* partial) {
    cfg.validate();
    auto x = make_grid(cfg);
    const Problem problem = semidiscrete_problem(cfg, std::make_shared<ForcingEvaluator>(cfg), x);
    const SchemeConfig scheme(cfg.alpha, cfg.kind, cfg.dt, cfg.norm(), cfg.formula);

    BootstrapMode boot = FractionalEuler{};
    if (cfg.seed == SeedMode::Exact) {
        Vector y1(x->size());
        for (std::size_t i = 0; i < x->size(); ++i) y1[i] = exact_solution((*x)[i], cfg.dt, cfg.tau);
        boot = ExactSeed{std::move(y1)};
    }

    FisherResult result;
    result.dt_max = dt_max(cfg.delta, cfg.dx());
    Trajectory& traj = partial != nullptr ? *partial : result.trajectory;
    traj = {};
    double worst = 0.0;
    double last = 0.0;
    integrate(problem, scheme, cfg.T, boot, [&](std::int64_t n, double t, std::span<const double> u) {
        check_field(u, n, t);
        traj.push_back(t, Vector(u.begin(), u.end()));
        last = 0.0;
        for (std::size_t i = 0; i < u.size(); ++i) {
            last = std::max(last, std::abs(u[i] - exact_solution((*x)[i], t, cfg.tau)));
        }
        worst = std::max(worst, last);
    });

    if (partial != nullptr) result.trajectory = traj;
    result.x = std::move(*x);
    result.final_error = last;
    result.report = make_report({{cfg.dt, worst}});
    return result;
}

double manufactured_residual(const FisherConfig& cfg, double t) {
    cfg.validate();
    auto x = make_grid(cfg);
    const Problem problem = semidiscrete_problem(cfg, std::make_shared<ForcingEvaluator>(cfg), x);
    Vector u(x->size()), rhs(x->size());
    for (std::size_t i = 0; i < x->size(); ++i) u[i] = exact_solution((*x)[i], t, cfg.tau);
    problem.rhs(t, u, rhs);

    const double d_cos = fractional_monomial(cfg, cfg.tau, t);
    const double d_x2 = fractional_monomial(cfg, 4.0, t);
    const double d_x = fractional_monomial(cfg, 3.0, t);
    double worst = 0.0;
    for (std::size_t i = 0; i < x->size(); ++i) {
        const double xi = (*x)[i];
        const double d = d_cos * std::cos(kFivePi * xi) + d_x2 * xi * xi + d_x * xi;
        worst = std::max(worst, std::abs(d - rhs[i]));
    }
    return worst;
}

double manufactured_residual_bound(double tau, double dx, double t) {
    const double k2 = kFivePi * kFivePi;
    return 1.1 * k2 * k2 * time_part(t, tau) * dx * dx / 12.0;
}

}  // namespace fracab
