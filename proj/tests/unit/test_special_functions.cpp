#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "fracab/special_functions.hpp"
#include "frozen_values.hpp"

using fracab::FractionalOrder;
using fracab::mittag_leffler;
using fracab::NormalizationVariant;

TEST_CASE("gamma at exact points") {
    CHECK(fracab::gamma(1.0) == 1.0);
    CHECK(fracab::gamma(5.0) == 24.0);
    CHECK(fracab::gamma(0.5) == doctest::Approx(1.7724538509055160).epsilon(1e-15));
    CHECK(fracab::gamma(3.65) == doctest::Approx(frozen::kGamma365).epsilon(1e-14));
}

TEST_CASE("gamma rejects arguments outside (0, 171.6]") {
    CHECK_THROWS_AS((void)fracab::gamma(0.0), std::domain_error);
    CHECK_THROWS_AS((void)fracab::gamma(-1.5), std::domain_error);
    CHECK_THROWS_AS((void)fracab::gamma(std::nan("")), std::domain_error);
    CHECK_THROWS_AS((void)fracab::gamma(171.7), std::overflow_error);
    CHECK(std::isfinite(fracab::gamma(171.6)));
}

TEST_CASE("gamma relative accuracy across the range") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> log_x(std::log(1e-3), std::log(171.0));
    for (int i = 0; i < 2000; ++i) {
        const double x = std::exp(log_x(rng));
        const double expected = std::tgamma(x);
        CHECK(std::abs(fracab::gamma(x) - expected) <= 1e-13 * expected);
    }
}

TEST_CASE("gamma recurrence on random arguments") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> dist(0.1, 80.0);
    for (int i = 0; i < 1000; ++i) {
        const double x = dist(rng);
        CHECK(std::abs(fracab::gamma(x + 1.0) - x * fracab::gamma(x)) <= 1e-12 * fracab::gamma(x + 1.0));
    }
}

TEST_CASE("reciprocal gamma vanishes at the poles") {
    CHECK(fracab::reciprocal_gamma(0.0) == 0.0);
    CHECK(fracab::reciprocal_gamma(-3.0) == 0.0);
    CHECK(fracab::reciprocal_gamma(-0.5) == doctest::Approx(-1.0 / (2.0 * std::sqrt(std::numbers::pi))));
    CHECK(fracab::reciprocal_gamma(200.0) == 0.0);
}

TEST_CASE("Mittag-Leffler at alpha = 1 is the exponential") {
    const FractionalOrder one(1.0);
    CHECK(mittag_leffler(one, 1.0) == doctest::Approx(2.718281828459045).epsilon(1e-15));
    CHECK(mittag_leffler(one, 0.0) == 1.0);
    for (double z = -30.0; z <= 30.0; z += 0.25) {
        CHECK(std::abs(mittag_leffler(one, z) - std::exp(z)) <= 1e-12 * std::max(1.0, std::exp(z)));
    }
}

TEST_CASE("Mittag-Leffler against high-precision values") {
    struct Case {
        double alpha, z, expected;
    };
    const Case cases[] = {
        {0.5, -1.0, frozen::kMl05Minus1},   {0.5, -10.0, frozen::kMl05Minus10},
        {0.3, -5.0, frozen::kMl03Minus5},   {0.8, -20.0, frozen::kMl08Minus20},
        {0.9, -50.0, frozen::kMl09Minus50}, {0.5, -50.0, frozen::kMl05Minus50},
        {0.7, 3.0, frozen::kMl07Plus3},
    };
    for (const auto& c : cases) {
        CAPTURE(c.alpha);
        CAPTURE(c.z);
        CHECK(std::abs(mittag_leffler(FractionalOrder(c.alpha), c.z) - c.expected) <= 1e-12 * std::max(1.0, c.expected));
    }
}

TEST_CASE("Mittag-Leffler asymptotic branch below z = -50") {
    CHECK(std::abs(mittag_leffler(FractionalOrder(0.6), -80.0) - frozen::kMl06Minus80) <= 1e-12);
    // leading term -1/(z Gamma(1 - alpha)) dominates far out
    const double z = -1e4;
    CHECK(mittag_leffler(FractionalOrder(0.5), z) ==
          doctest::Approx(-1.0 / (z * fracab::gamma(0.5))).epsilon(1e-6));
}

TEST_CASE("Mittag-Leffler decreases on [-10, 0]") {
    for (double alpha : {0.1, 0.3, 0.5, 0.7, 0.9, 0.99}) {
        const FractionalOrder a(alpha);
        double previous = mittag_leffler(a, -10.0);
        for (double z = -9.9; z <= 0.0 + 1e-12; z += 0.1) {
            const double value = mittag_leffler(a, z);
            CAPTURE(alpha);
            CAPTURE(z);
            CHECK(value > previous);
            previous = value;
        }
    }
}

TEST_CASE("Mittag-Leffler series honours the term cap") {
    fracab::MittagLefflerOptions options;
    options.term_cap = 5;
    CHECK_THROWS_AS((void)mittag_leffler(FractionalOrder(0.5), 3.0, options), fracab::ConvergenceError);
}

TEST_CASE("normalization variants") {
    using fracab::normalization;
    for (auto v : {NormalizationVariant::Unit, NormalizationVariant::GammaBlend}) {
        CHECK(normalization(0.0, v) == 1.0);
        CHECK(normalization(1.0, v) == 1.0);
    }
    CHECK(normalization(0.3, NormalizationVariant::Unit) == 1.0);
    CHECK(normalization(0.5, NormalizationVariant::GammaBlend) ==
          doctest::Approx(frozen::kNormGammaBlend05).epsilon(1e-15));
    CHECK(normalization(0.21, NormalizationVariant::GammaBlend) ==
          doctest::Approx(frozen::kNormGammaBlend021).epsilon(1e-15));
    CHECK_THROWS_AS((void)normalization(-0.1, NormalizationVariant::Unit), std::invalid_argument);
    CHECK_THROWS_AS((void)normalization(1.1, NormalizationVariant::GammaBlend), std::invalid_argument);
}

TEST_CASE("normalization is continuous as alpha tends to zero") {
    CHECK(fracab::normalization(1e-12, NormalizationVariant::GammaBlend) == doctest::Approx(1.0).epsilon(1e-11));
}

TEST_CASE("fractional order validation") {
    CHECK_THROWS_AS(FractionalOrder(0.0), std::invalid_argument);
    CHECK_THROWS_AS(FractionalOrder(1.0000001), std::invalid_argument);
    CHECK_THROWS_AS(FractionalOrder(std::nan("")), std::invalid_argument);
    CHECK(FractionalOrder(1.0).is_classical());
    CHECK_FALSE(FractionalOrder(0.999).is_classical());
}

TEST_CASE("kind and normalization names round-trip") {
    using namespace fracab;
    for (auto k : {DerivativeKind::Caputo, DerivativeKind::CaputoFabrizio, DerivativeKind::AtanganaBaleanuCaputo}) {
        CHECK(parse_kind(to_string(k)) == k);
    }
    for (auto v : {NormalizationVariant::Unit, NormalizationVariant::GammaBlend}) {
        CHECK(parse_normalization(to_string(v)) == v);
    }
    CHECK_THROWS_AS((void)parse_kind("riemann"), std::invalid_argument);
    CHECK(default_normalization(DerivativeKind::AtanganaBaleanuCaputo) == NormalizationVariant::GammaBlend);
    CHECK(default_normalization(DerivativeKind::CaputoFabrizio) == NormalizationVariant::Unit);
}
