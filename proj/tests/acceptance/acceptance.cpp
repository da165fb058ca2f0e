// Acceptance runner: `acceptance <k>` evaluates criterion k and prints one
// line "criterion k: PASS|FAIL <detail>". Exit status is nonzero on FAIL.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <unistd.h>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <array>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "fracab/ab2_schemes.hpp"
#include "fracab/cli.hpp"
#include "fracab/error_analysis.hpp"
#include "fracab/fisher_pde.hpp"
#include "fracab/oracles.hpp"
#include "fracab/special_functions.hpp"
#include "graded_gauss.hpp"

using namespace fracab;

namespace {

struct Verdict {
    bool pass;
    std::string detail;
};

std::string fmt(double v) {
    std::ostringstream s;
    s.precision(4);
    s << v;
    return s.str();
}

const DerivativeKind kKinds[] = {DerivativeKind::Caputo, DerivativeKind::CaputoFabrizio,
                                 DerivativeKind::AtanganaBaleanuCaputo};

Verdict classical_recovery() {
    const Problem p([](double, std::span<const double> y, std::span<double> out) { out[0] = -y[0]; }, Vector{1.0});
    const auto classical = classical_ab2(p, 1e-3, 1.0);
    double worst = 0.0;
    for (auto kind : kKinds) {
        const auto traj = integrate(p, SchemeConfig(FractionalOrder(1.0), kind, 1e-3, 1.0), 1.0);
        for (std::size_t k = 0; k < traj.size(); ++k) {
            const double ref = classical.states[k][0];
            worst = std::max(worst, std::abs(traj.states[k][0] - ref) / std::abs(ref));
        }
    }
    return {worst <= 1e-12, "max relative deviation " + fmt(worst)};
}

Verdict weight_oracle() {
    std::mt19937_64 rng(20240601);
    std::uniform_real_distribution<double> a_dist(0.05, 1.0), logh(std::log(1e-3), std::log(0.5));
    std::uniform_int_distribution<long> n_dist(1, 500);
    double worst = 0.0;
    for (int i = 0; i < 50; ++i) {
        const double a = a_dist(rng), h = std::exp(logh(rng));
        const long n = n_dist(rng);
        const auto lib = caputo_brackets(FractionalOrder(a), h, n);
        const auto ref = testsupport::lagrange_brackets(a, h, n);
        worst = std::max({worst, std::abs(lib.current - ref.B), std::abs(lib.previous - ref.C)});
    }
    return {worst <= 1e-9, "max bracket deviation " + fmt(worst) + " over 50 samples"};
}

Problem power_problem() {
    const double c = fracab::gamma(4.0) / fracab::gamma(3.5);
    return Problem([c](double t, std::span<const double>, std::span<double> out) { out[0] = c * std::pow(t, 2.5); },
                   Vector{0.0});
}

Verdict scalar_convergence() {
    const Problem p = power_problem();
    const ExactFunction exact = [](double t) { return Vector{t * t * t}; };
    std::vector<double> errors;
    double ref_worst = 0.0;
    for (int steps : {20, 40, 80, 160}) {
        const double h = 1.0 / steps;
        errors.push_back(max_error(integrate(p, SchemeConfig(FractionalOrder(0.5), DerivativeKind::Caputo, h), 1.0), exact));
        ReferenceConfig rc;
        rc.substeps = 32;
        ref_worst = std::max(ref_worst, max_error(caputo_reference(p, FractionalOrder(0.5), h, 1.0, rc), exact));
    }
    bool decreasing = true;
    for (std::size_t i = 1; i < errors.size(); ++i) decreasing = decreasing && errors[i] < errors[i - 1];
    std::string detail = "scheme errors";
    for (double e : errors) detail += " " + fmt(e);
    detail += (decreasing ? " (decreasing)" : " (not decreasing)");
    detail += "; reference error " + fmt(ref_worst);
    return {decreasing && errors.back() <= 1e-4 && ref_worst <= 1e-8, detail};
}

Verdict cf_closed_form() {
    const Problem p([](double t, std::span<const double>, std::span<double> out) { out[0] = t; }, Vector{0.0});
    auto final_error = [&](int steps) {
        const auto traj = integrate(p, SchemeConfig(FractionalOrder(0.5), DerivativeKind::CaputoFabrizio, 1.0 / steps), 1.0);
        return std::abs(traj.states.back()[0] - 0.75);
    };
    const double e100 = final_error(100);
    std::vector<ErrorSample> samples;
    for (int steps : {10, 20, 40, 80}) samples.push_back({1.0 / steps, final_error(steps)});
    const auto orders = observed_order(samples);
    bool eoc_ok = orders.size() == 3;
    std::string detail = "error at h=1/100 " + fmt(e100) + "; EOC";
    for (double q : orders) {
        eoc_ok = eoc_ok && std::abs(q - 2.0) <= 0.2;
        detail += " " + fmt(q);
    }
    return {e100 <= 1e-3 && eoc_ok, detail};
}

Verdict bound_domination() {
    const Problem p([](double t, std::span<const double>, std::span<double> out) { out[0] = std::sin(t); }, Vector{0.0});
    const double h = 0.01;
    int violations = 0;
    double worst_ratio = 0.0;
    for (double a : {0.3, 0.5, 0.8}) {
        const FractionalOrder alpha(a);
        const auto ref = caputo_reference(p, alpha, h, 101 * h);
        const auto defects = local_defects(ref, p, SchemeConfig(alpha, DerivativeKind::Caputo, h));
        for (std::size_t k = 0; k < defects.size() && k < 100; ++k) {
            const double bound = caputo_remainder_bound(alpha, h, static_cast<std::int64_t>(k + 1), 1.0);
            worst_ratio = std::max(worst_ratio, defects[k] / bound);
            if (defects[k] > bound) ++violations;
        }
    }
    return {violations == 0, std::to_string(violations) + " violations of 300; worst defect/bound " + fmt(worst_ratio)};
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::vector<std::string> fields;
        std::stringstream ss(line);
        std::string f;
        while (std::getline(ss, f, ',')) fields.push_back(f);
        rows.push_back(fields);
    }
    return rows;
}

struct TableRun {
    int code;
    // errors[row][kind] in caputo, cf, abc order
    std::vector<std::array<double, 3>> errors;
};

TableRun run_table(cli::Command command) {
    cli::RunSpec spec;
    spec.command = command;
    spec.parameters = {{"no-timestamp", "1"}};
    std::ostringstream out, err;
    TableRun result;
    result.code = cli::run(spec, out, err);
    const auto rows = parse_csv(out.str());
    if (rows.empty()) return result;
    std::array<std::size_t, 3> col{};
    for (std::size_t i = 0; i < 3; ++i) {
        const std::string name = std::string(to_string(kKinds[i])) + "_error";
        for (std::size_t c = 0; c < rows[0].size(); ++c) {
            if (rows[0][c] == name) col[i] = c;
        }
    }
    for (std::size_t r = 1; r < rows.size(); ++r) {
        std::array<double, 3> e{};
        for (std::size_t i = 0; i < 3; ++i) e[i] = std::stod(rows[r][col[i]]);
        result.errors.push_back(e);
    }
    return result;
}

std::string describe(const TableRun& run) {
    std::string detail = "exit " + std::to_string(run.code) + "; errors (caputo/cf/abc)";
    for (const auto& row : run.errors) detail += " [" + fmt(row[0]) + " " + fmt(row[1]) + " " + fmt(row[2]) + "]";
    return detail;
}

Verdict table1_pattern() {
    const auto run = run_table(cli::Command::Table1);
    bool ok = run.errors.size() == 4;
    for (std::size_t r = 0; r < run.errors.size(); ++r) {
        const auto& e = run.errors[r];
        for (int i = 0; i < 3; ++i) {
            ok = ok && std::isfinite(e[i]) && e[i] <= 1e-4;
            if (r > 0) ok = ok && e[i] < run.errors[r - 1][i];
        }
        ok = ok && e[2] < e[1] && e[1] < e[0];
    }
    return {ok, describe(run)};
}

Verdict table2_pattern() {
    const auto run = run_table(cli::Command::Table2);
    bool ok = run.errors.size() == 4;
    for (const auto& e : run.errors) {
        for (int i = 0; i < 3; ++i) ok = ok && std::isfinite(e[i]) && e[i] <= 1e-4;
        ok = ok && e[2] < e[1] && e[2] < e[0];
    }
    return {ok, describe(run)};
}

Verdict manufactured_residual_check() {
    FisherConfig cfg;
    cfg.delta = 1.0;
    const double t = 0.5;
    bool ok = true;
    std::string detail = "residual/bound";
    double previous = 0.0;
    std::string ratios = "; halving ratios";
    for (int N : {50, 100, 200}) {
        cfg.N = N;
        const double r = manufactured_residual(cfg, t);
        const double b = manufactured_residual_bound(cfg.tau, cfg.dx(), t);
        ok = ok && r <= b;
        detail += " " + fmt(r / b);
        if (previous > 0.0) {
            const double q = previous / r;
            ok = ok && std::abs(q - 4.0) <= 0.15 * 4.0;
            ratios += " " + fmt(q);
        }
        previous = r;
    }
    return {ok, detail + ratios};
}

std::string slurp(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

Verdict determinism() {
#ifdef FRACAB_CLI_PATH
    const auto dir = std::filesystem::temp_directory_path();
    const auto a = dir / ("fracab_det_a_" + std::to_string(::getpid()) + ".csv");
    const auto b = dir / ("fracab_det_b_" + std::to_string(::getpid()) + ".csv");
    for (const std::filesystem::path& path : {a, b}) {
        const std::string cmd = std::string("\"") + FRACAB_CLI_PATH + "\" table1 --no-timestamp --out \"" +
                                path.string() + "\" 2>/dev/null";
        const int status = std::system(cmd.c_str());
        (void)status;  // blow-up cells exit 3 but still write the table
    }
    const std::string first = slurp(a), second = slurp(b);
    std::filesystem::remove(a);
    std::filesystem::remove(b);
    const bool same = !first.empty() && first == second;
    return {same, std::to_string(first.size()) + " bytes, " + (same ? "identical" : "different")};
#else
    return {false, "command-line runner not built"};
#endif
}

struct Criterion {
    std::function<Verdict()> check;
    double budget_seconds;
};

}  // namespace

int main(int argc, char** argv) {
    const std::vector<Criterion> criteria = {
        {classical_recovery, 1.0},  {weight_oracle, 10.0},   {scalar_convergence, 5.0},
        {cf_closed_form, 1.0},      {bound_domination, 10.0}, {table1_pattern, 60.0},
        {table2_pattern, 60.0},     {manufactured_residual_check, 10.0}, {determinism, 120.0},
    };
    std::vector<int> which;
    if (argc < 2) {
        for (int k = 1; k <= 9; ++k) which.push_back(k);
    } else {
        for (int i = 1; i < argc; ++i) which.push_back(std::atoi(argv[i]));
    }

    bool all = true;
    for (int k : which) {
        if (k < 1 || k > static_cast<int>(criteria.size())) {
            std::cerr << "unknown criterion " << k << '\n';
            return 2;
        }
        const auto start = std::chrono::steady_clock::now();
        Verdict v;
        try {
            v = criteria[k - 1].check();
        } catch (const std::exception& e) {
            v = {false, std::string("exception: ") + e.what()};
        }
        const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        const bool in_time = seconds < criteria[k - 1].budget_seconds;
        const bool pass = v.pass && in_time;
        std::cout << "criterion " << k << ": " << (pass ? "PASS" : "FAIL") << ' ' << v.detail << "; " << fmt(seconds)
                  << " s" << (in_time ? "" : " (over budget)") << '\n';
        all = all && pass;
    }
    return all ? 0 : 1;
}
