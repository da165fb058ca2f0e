#include "fracab/error_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fracab/special_functions.hpp"

namespace fracab {
namespace {

double max_norm_difference(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) throw std::invalid_argument("dimension mismatch");
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

}  // namespace

double caputo_remainder_bound(FractionalOrder alpha, double h, std::int64_t n, double M, BoundVariant variant) {
    if (n < 0) throw std::invalid_argument("step index must be nonnegative");
    if (!(h > 0.0)) throw std::invalid_argument("step size must be positive");
    if (M < 0.0) throw std::invalid_argument("derivative bound must be nonnegative");
    const double a = alpha.value();
    const double nd = static_cast<double>(n);
    const double second = variant == BoundVariant::Proof ? std::pow(nd, a) : nd * nd;
    return std::pow(h, 3.0 + a) * M * (std::pow(nd + 1.0, a) + second) / (12.0 * gamma(a + 1.0));
}

double cf_remainder_bound(double alpha, double h, std::int64_t n, double M, double norm) {
    if (!(alpha >= 0.0 && alpha <= 1.0)) throw std::invalid_argument("alpha must lie in [0, 1]");
    if (n < 0) throw std::invalid_argument("step index must be nonnegative");
    if (n > 20) throw std::overflow_error("cf_remainder_bound: (n+1)! overflows for n > 20");
    if (!(norm > 0.0)) throw std::invalid_argument("normalization must be positive");
    double factorial = 1.0;
    for (std::int64_t k = 2; k <= n + 1; ++k) factorial *= static_cast<double>(k);
    return alpha / norm * factorial * std::pow(h, static_cast<double>(n + 1)) * M;
}

std::vector<GapEntry> stability_gap(const Trajectory& traj, const RhsFunction& rhs) {
    if (traj.size() < 2) throw std::invalid_argument("stability_gap needs at least two nodes");
    const std::size_t dim = traj.states.front().size();
    Vector f_prev(dim), f(dim);
    rhs(traj.times[0], traj.states[0], f_prev);

    std::vector<GapEntry> gaps;
    gaps.reserve(traj.size() - 1);
    for (std::size_t k = 1; k < traj.size(); ++k) {
        rhs(traj.times[k], traj.states[k], f);
        gaps.push_back({static_cast<std::int64_t>(k), max_norm_difference(f, f_prev),
                        max_norm_difference(traj.states[k], traj.states[k - 1])});
        f_prev.swap(f);
    }
    return gaps;
}

double max_error(const Trajectory& traj, const ExactFunction& exact) {
    double worst = 0.0;
    for (std::size_t k = 0; k < traj.size(); ++k) {
        worst = std::max(worst, max_norm_difference(traj.states[k], exact(traj.times[k])));
    }
    return worst;
}

double max_error(const Trajectory& traj, const Trajectory& reference) {
    if (traj.size() != reference.size()) throw std::invalid_argument("trajectories differ in length");
    double worst = 0.0;
    for (std::size_t k = 0; k < traj.size(); ++k) {
        if (std::abs(traj.times[k] - reference.times[k]) > 1e-9 * std::max(1.0, std::abs(traj.times[k]))) {
            throw std::invalid_argument("trajectories are sampled at different times");
        }
        worst = std::max(worst, max_norm_difference(traj.states[k], reference.states[k]));
    }
    return worst;
}

std::vector<double> observed_order(std::span<const ErrorSample> errors_by_h) {
    if (errors_by_h.size() < 2) throw std::invalid_argument("observed_order needs at least two samples");
    std::vector<double> orders;
    orders.reserve(errors_by_h.size() - 1);
    for (std::size_t i = 0; i < errors_by_h.size(); ++i) {
        if (!(errors_by_h[i].error > 0.0)) {
            throw std::domain_error("observed_order: errors must be positive, got " +
                                    std::to_string(errors_by_h[i].error));
        }
        if (i == 0) continue;
        const auto& coarse = errors_by_h[i - 1];
        const auto& fine = errors_by_h[i];
        if (!(fine.h < coarse.h)) throw std::invalid_argument("observed_order: h must be strictly decreasing");
        orders.push_back(std::log(coarse.error / fine.error) / std::log(coarse.h / fine.h));
    }
    return orders;
}

ErrorReport make_report(std::vector<ErrorSample> errors_by_h) {
    std::sort(errors_by_h.begin(), errors_by_h.end(),
              [](const ErrorSample& a, const ErrorSample& b) { return a.h > b.h; });
    ErrorReport report;
    for (const auto& s : errors_by_h) report.max_error = std::max(report.max_error, s.error);
    if (errors_by_h.size() >= 2) report.observed_orders = observed_order(errors_by_h);
    report.errors_by_h = std::move(errors_by_h);
    return report;
}

std::vector<double> local_defects(const Trajectory& reference, const Problem& problem, const SchemeConfig& scheme) {
    if (reference.size() < 3) throw std::invalid_argument("local_defects needs at least three nodes");
    const std::size_t dim = problem.dimension();
    Vector f_prev(dim), f(dim);
    problem.rhs(reference.times[0], reference.states[0], f_prev);
    problem.rhs(reference.times[1], reference.states[1], f);

    std::vector<double> defects;
    defects.reserve(reference.size() - 2);
    for (std::size_t n = 1; n + 1 < reference.size(); ++n) {
        const auto w = weights_for(scheme, static_cast<std::int64_t>(n));
        const auto& y = reference.states[n];
        const auto& y_next = reference.states[n + 1];
        double d = 0.0;
        for (std::size_t i = 0; i < dim; ++i) {
            d = std::max(d, std::abs(y_next[i] - y[i] - w.c_curr * f[i] - w.c_prev * f_prev[i]));
        }
        defects.push_back(d);
        f_prev.swap(f);
        problem.rhs(reference.times[n + 1], reference.states[n + 1], f);
    }
    return defects;
}

}  // namespace fracab
