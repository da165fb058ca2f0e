#pragma once

#include "fracab/types.hpp"

namespace fracab {

/// Gamma function for 0 < x <= 171.6 (Lanczos approximation).
/// Throws std::domain_error for x <= 0 and std::overflow_error beyond 171.6.
[[nodiscard]] double gamma(double x);

/// 1/Gamma(x) for any real x; zero at the poles 0, -1, -2, ...
[[nodiscard]] double reciprocal_gamma(double x);

struct MittagLefflerOptions {
    std::size_t term_cap = 10'000;
    double asymptotic_threshold = -50.0;  // z below this uses the asymptotic expansion
};

/// One-parameter Mittag-Leffler function E_alpha(z) = sum_k z^k / Gamma(alpha k + 1).
///
/// Power series with compensated summation where it is numerically safe; in the
/// cancellation regime on the negative axis the Laplace-type integral
/// representation is used instead, and an asymptotic expansion below
/// `asymptotic_threshold`. alpha = 1 returns exp(z).
[[nodiscard]] double mittag_leffler(FractionalOrder alpha, double z,
                                    const MittagLefflerOptions& options = {});

/// Kernel normalization M(alpha) / B(alpha) for alpha in [0, 1].
[[nodiscard]] double normalization(double alpha, NormalizationVariant variant);

/// Unit for the exponential kernel, GammaBlend for the Mittag-Leffler kernel.
/// The power kernel has no normalization; Unit is returned.
[[nodiscard]] NormalizationVariant default_normalization(DerivativeKind kind) noexcept;

}  // namespace fracab
