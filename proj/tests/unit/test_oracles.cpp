#include <cmath>

#include "doctest.h"
#include "fracab/error_analysis.hpp"
#include "fracab/oracles.hpp"
#include "fracab/special_functions.hpp"
#include "frozen_values.hpp"

using namespace fracab;

namespace {

Problem forcing_only(std::function<double(double)> f) {
    return Problem([f = std::move(f)](double t, std::span<const double>, std::span<double> out) { out[0] = f(t); },
                   Vector{0.0});
}

double worst(const Trajectory& traj, const std::function<double(double)>& exact) {
    double e = 0.0;
    for (std::size_t k = 0; k < traj.size(); ++k) e = std::max(e, std::abs(traj.states[k][0] - exact(traj.times[k])));
    return e;
}

}  // namespace

TEST_CASE("caputo reference reproduces a power solution") {
    // D^0.5 y = Gamma(4)/Gamma(3.5) t^2.5, y = t^3
    const double c = fracab::gamma(4.0) / fracab::gamma(3.5);
    const Problem p = forcing_only([c](double t) { return c * std::pow(t, 2.5); });
    auto cube = [](double t) { return t * t * t; };
    const auto ref = caputo_reference(p, FractionalOrder(0.5), 0.1, 1.0);
    REQUIRE(ref.size() == 11);
    // second order in the fine step h / substeps
    const double e32 = worst(ref, cube);
    CHECK(e32 < 1e-5);
    ReferenceConfig fine;
    fine.substeps = 64;
    const double e64 = worst(caputo_reference(p, FractionalOrder(0.5), 0.1, 1.0, fine), cube);
    CHECK(e32 / e64 > 3.0);
    CHECK(worst(caputo_reference(p, FractionalOrder(0.5), 1.0 / 320, 1.0), cube) < 1e-8);
}

TEST_CASE("caputo reference on a nonlinear problem converges under refinement") {
    // D^a y = -y has y = E_a(-t^a)
    const Problem p([](double, std::span<const double> y, std::span<double> out) { out[0] = -y[0]; }, Vector{1.0});
    const FractionalOrder a(0.6);
    auto exact = [&](double t) { return mittag_leffler(a, -std::pow(t, 0.6)); };
    ReferenceConfig coarse, fine;
    coarse.substeps = 8;
    fine.substeps = 32;
    const double e_coarse = worst(caputo_reference(p, a, 0.1, 1.0, coarse), exact);
    const double e_fine = worst(caputo_reference(p, a, 0.1, 1.0, fine), exact);
    CHECK(e_fine < 0.5 * e_coarse);
    CHECK(e_fine < 1e-4);
}

TEST_CASE("exponential-kernel reference") {
    // D y = t with M = 1, alpha = 0.5: y = 0.5 t + 0.25 t^2
    const auto ref = cf_reference(forcing_only([](double t) { return t; }), FractionalOrder(0.5), 0.1, 1.0, 1.0);
    CHECK(ref.states.back()[0] == doctest::Approx(0.75).epsilon(1e-12));
    CHECK(worst(ref, [](double t) { return 0.5 * t + 0.25 * t * t; }) < 1e-12);
}

TEST_CASE("Mittag-Leffler-kernel reference") {
    const Problem p = forcing_only([](double t) { return t * t; });
    const auto ref = abc_reference(p, FractionalOrder(0.5), 0.1, 1.0, 1.0);
    CHECK(std::abs(ref.states.back()[0] - frozen::kAbcReferenceAt1) < 2e-6);
    ReferenceConfig fine;
    fine.substeps = 128;
    const auto finer = abc_reference(p, FractionalOrder(0.5), 0.1, 1.0, 1.0, fine);
    CHECK(std::abs(finer.states.back()[0] - frozen::kAbcReferenceAt1) < 1e-7);
}

TEST_CASE("references collapse to the classical integral at alpha = 1") {
    const Problem p([](double t, std::span<const double> y, std::span<double> out) { out[0] = std::cos(t) - y[0]; },
                    Vector{0.5});
    // y' = cos t - y, y(0) = 0.5: y = (cos t + sin t)/2
    auto exact = [](double t) { return 0.5 * (std::cos(t) + std::sin(t)); };
    const FractionalOrder one(1.0);
    CHECK(worst(caputo_reference(p, one, 0.1, 2.0), exact) < 1e-6);
    CHECK(worst(cf_reference(p, one, 0.1, 2.0, 1.0), exact) < 1e-6);
    CHECK(worst(abc_reference(p, one, 0.1, 2.0, 1.0), exact) < 1e-6);
}

TEST_CASE("dispatch follows the scheme kind") {
    const Problem p = forcing_only([](double t) { return t; });
    const auto via = reference_solution(p, SchemeConfig(FractionalOrder(0.5), DerivativeKind::CaputoFabrizio, 0.1), 1.0);
    const auto direct = cf_reference(p, FractionalOrder(0.5), 0.1, 1.0, 1.0);
    CHECK(via.states.back()[0] == direct.states.back()[0]);
}

TEST_CASE("classical AB2") {
    const Problem zero([](double, std::span<const double>, std::span<double> out) { out[0] = 0.0; }, Vector{2.0});
    auto traj = classical_ab2(zero, 0.1, 1.0);
    for (const auto& y : traj.states) CHECK(y[0] == 2.0);

    const Problem one([](double, std::span<const double>, std::span<double> out) { out[0] = 1.0; }, Vector{0.0});
    traj = classical_ab2(one, 0.1, 1.0);
    CHECK(traj.states.back()[0] == doctest::Approx(1.0).epsilon(1e-14));

    const Problem decay([](double, std::span<const double> y, std::span<double> out) { out[0] = -y[0]; }, Vector{1.0});
    traj = classical_ab2(decay, 0.01, 1.0);
    CHECK(std::abs(traj.states.back()[0] - std::exp(-1.0)) < 1e-4);

    CHECK_THROWS_AS((void)classical_ab2(one, 0.1, 0.15), std::invalid_argument);
}

TEST_CASE("stiff implicit local term defeats the fixed point") {
    const Problem stiff([](double, std::span<const double> y, std::span<double> out) { out[0] = -100.0 * y[0]; },
                        Vector{1.0});
    CHECK_THROWS_AS((void)cf_reference(stiff, FractionalOrder(0.5), 0.1, 1.0, 1.0), ConvergenceError);
}

TEST_CASE("reference configuration validation") {
    ReferenceConfig cfg;
    cfg.substeps = 0;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg.substeps = 4;
    cfg.tol = 0.0;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    const Problem p = forcing_only([](double t) { return t; });
    CHECK_THROWS_AS((void)cf_reference(p, FractionalOrder(0.5), 0.1, 1.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS((void)caputo_reference(p, FractionalOrder(0.5), 0.1, 0.05), std::invalid_argument);
}

TEST_CASE("exponential-kernel scheme converges to the reference") {
    const Problem p([](double t, std::span<const double> y, std::span<double> out) { out[0] = std::sin(t) - 0.5 * y[0]; },
                    Vector{0.0});
    double previous = 1.0;
    for (double h : {0.1, 0.05, 0.025}) {
        const SchemeConfig scheme(FractionalOrder(0.7), DerivativeKind::CaputoFabrizio, h);
        const double e = max_error(integrate(p, scheme, 1.0), reference_solution(p, scheme, 1.0));
        CHECK(e < previous);
        previous = e;
    }
}
