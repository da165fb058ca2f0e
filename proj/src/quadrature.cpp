#include "fracab/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <string>
#include <vector>

#include "fracab/types.hpp"

namespace fracab {
namespace {

// Kronrod abscissae on [0, 1]; odd entries (1, 3, 5, 7) are the Gauss nodes.
constexpr std::array<double, 8> kXk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
    double a;
    double b;
    double value;
    double error;
    bool operator<(const Segment& other) const { return error < other.error; }
};

// QUADPACK-style error estimate for one G7K15 panel.
Segment panel(const std::function<double(double)>& f, double a, double b) {
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const double fc = f(center);
    double kronrod = fc * kWk[7];
    double gauss = fc * kWg[3];
    double abs_sum = std::abs(kronrod);
    std::array<double, 7> f1{};
    std::array<double, 7> f2{};
    for (std::size_t j = 0; j < 7; ++j) {
        const double dx = half * kXk[j];
        f1[j] = f(center - dx);
        f2[j] = f(center + dx);
        kronrod += kWk[j] * (f1[j] + f2[j]);
        abs_sum += kWk[j] * (std::abs(f1[j]) + std::abs(f2[j]));
        if (j % 2 == 1) gauss += kWg[j / 2] * (f1[j] + f2[j]);
    }
    const double mean = 0.5 * kronrod;
    double asc = kWk[7] * std::abs(fc - mean);
    for (std::size_t j = 0; j < 7; ++j) {
        asc += kWk[j] * (std::abs(f1[j] - mean) + std::abs(f2[j] - mean));
    }
    asc *= std::abs(half);

    double err = std::abs((kronrod - gauss) * half);
    if (asc != 0.0 && err != 0.0) err = asc * std::min(1.0, std::pow(200.0 * err / asc, 1.5));
    const double floor = 50.0 * std::numeric_limits<double>::epsilon() * abs_sum * std::abs(half);
    err = std::max(err, floor);
    return {a, b, kronrod * half, err};
}

}  // namespace

QuadratureResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                                    double abs_tol, std::size_t max_evaluations) {
    if (!(abs_tol > 0.0)) throw std::invalid_argument("quadrature tolerance must be positive");
    if (a == b) return {};

    std::priority_queue<Segment> heap;
    heap.push(panel(f, a, b));
    std::size_t evaluations = 15;
    double value = heap.top().value;
    double error = heap.top().error;

    while (error > abs_tol) {
        if (evaluations + 30 > max_evaluations) {
            throw ConvergenceError("quadrature did not reach tolerance " + std::to_string(abs_tol) +
                                   " within " + std::to_string(max_evaluations) +
                                   " evaluations (estimate " + std::to_string(error) + ")");
        }
        const Segment worst = heap.top();
        const double mid = 0.5 * (worst.a + worst.b);
        if (mid == worst.a || mid == worst.b) {
            throw ConvergenceError("quadrature interval collapsed below machine resolution");
        }
        heap.pop();
        const Segment left = panel(f, worst.a, mid);
        const Segment right = panel(f, mid, worst.b);
        evaluations += 30;
        value += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);

        // Refresh the running sums periodically to stop drift from the incremental updates.
        if (heap.size() % 64 == 0) {
            auto copy = heap;
            value = 0.0;
            error = 0.0;
            while (!copy.empty()) {
                value += copy.top().value;
                error += copy.top().error;
                copy.pop();
            }
        }
    }
    return {value, error, evaluations};
}

}  // namespace fracab
