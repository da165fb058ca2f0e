#include "fracab/cli.hpp"

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <vector>

#include "fracab/fisher_pde.hpp"
#include "fracab/oracles.hpp"
#include "fracab/special_functions.hpp"

namespace fracab::cli {
namespace {

// Invalid user input, reported with code=invalid_spec.
class SpecError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::string trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return std::string(s.substr(first, last - first + 1));
}

std::string quoted(std::string_view message) {
    std::string out = "\"";
    for (char c : message) {
        if (c == '"' || c == '\\') out += '\\';
        out += c == '\n' ? ' ' : c;
    }
    return out + "\"";
}

class Params {
public:
    Params(std::map<std::string, std::string> values, std::set<std::string> allowed)
        : values_(std::move(values)) {
        for (const auto& [key, _] : values_) {
            if (!allowed.contains(key)) throw SpecError("unknown parameter '" + key + "'");
        }
    }

    [[nodiscard]] bool has(const std::string& key) const { return values_.contains(key); }

    [[nodiscard]] std::string text(const std::string& key, std::string fallback) const {
        const auto it = values_.find(key);
        return it == values_.end() ? fallback : it->second;
    }

    [[nodiscard]] double number(const std::string& key, double fallback) const {
        const auto it = values_.find(key);
        if (it == values_.end()) return fallback;
        try {
            std::size_t used = 0;
            const double v = std::stod(it->second, &used);
            if (used != it->second.size() || !std::isfinite(v)) throw std::invalid_argument("");
            return v;
        } catch (const std::exception&) {
            throw SpecError("parameter '" + key + "' is not a finite number: '" + it->second + "'");
        }
    }

    [[nodiscard]] int integer(const std::string& key, int fallback) const {
        const auto it = values_.find(key);
        if (it == values_.end()) return fallback;
        try {
            std::size_t used = 0;
            const long v = std::stol(it->second, &used);
            if (used != it->second.size()) throw std::invalid_argument("");
            return static_cast<int>(v);
        } catch (const std::exception&) {
            throw SpecError("parameter '" + key + "' is not an integer: '" + it->second + "'");
        }
    }

    [[nodiscard]] bool flag(const std::string& key) const {
        const auto it = values_.find(key);
        if (it == values_.end()) return false;
        const std::string& v = it->second;
        if (v.empty() || v == "true" || v == "1" || v == "yes") return true;
        if (v == "false" || v == "0" || v == "no") return false;
        throw SpecError("parameter '" + key + "' is not a boolean: '" + v + "'");
    }

private:
    std::map<std::string, std::string> values_;
};

const std::set<std::string> kCommon = {"config", "no-timestamp", "paper-literal", "out"};

std::set<std::string> allowed_keys(Command command) {
    std::set<std::string> keys = kCommon;
    auto add = [&](std::initializer_list<const char*> more) {
        for (const char* k : more) keys.insert(k);
    };
    switch (command) {
        case Command::SolveOde: add({"alpha", "kind", "h", "T", "rhs", "problem", "norm", "seed"}); break;
        case Command::SolveFisher:
            add({"alpha", "kind", "dt", "dx", "T", "delta", "tau", "L", "N", "forcing", "norm", "seed", "every"});
            break;
        case Command::Table1:
        case Command::Table2:
            add({"alpha", "kind", "dt", "T", "delta", "tau", "L", "N", "forcing", "norm", "seed", "spatial",
                 "timing"});
            break;
        case Command::Convergence:
            add({"alpha", "kind", "h", "T", "rhs", "problem", "norm", "seed", "levels", "substeps"});
            break;
        case Command::BoundCheck: add({"alpha", "kind", "h", "steps", "M", "substeps"}); break;
    }
    return keys;
}

template <typename F>
auto as_spec_error(F&& f) -> decltype(f()) {
    try {
        return f();
    } catch (const std::invalid_argument& e) {
        throw SpecError(e.what());
    }
}

FractionalOrder read_alpha(const Params& p, double fallback) {
    const double a = p.number("alpha", fallback);
    return as_spec_error([&] { return FractionalOrder(a); });
}

DerivativeKind read_kind(const Params& p, const char* fallback) {
    const std::string name = p.text("kind", fallback);
    return as_spec_error([&] { return parse_kind(name); });
}

std::vector<DerivativeKind> read_kinds(const Params& p) {
    const std::string name = p.text("kind", "all");
    if (name == "all") {
        return {DerivativeKind::Caputo, DerivativeKind::CaputoFabrizio, DerivativeKind::AtanganaBaleanuCaputo};
    }
    return {as_spec_error([&] { return parse_kind(name); })};
}

NormalizationVariant read_norm(const Params& p, DerivativeKind kind) {
    if (!p.has("norm")) return default_normalization(kind);
    const std::string name = p.text("norm", "");
    return as_spec_error([&] { return parse_normalization(name); });
}

FormulaVariant read_formula(const Params& p) {
    return p.flag("paper-literal") ? FormulaVariant::PaperLiteral : FormulaVariant::Rederived;
}

double kind_norm(DerivativeKind kind, FractionalOrder alpha, NormalizationVariant variant) {
    return kind == DerivativeKind::Caputo ? 1.0 : normalization(alpha.value(), variant);
}

// Accumulates a CSV document.
class Csv {
public:
    explicit Csv(bool timestamp) {
        if (timestamp) {
            const std::time_t now = std::time(nullptr);
            std::tm utc{};
            gmtime_r(&now, &utc);
            std::array<char, 32> buf{};
            std::strftime(buf.data(), buf.size(), "%Y-%m-%dT%H:%M:%SZ", &utc);
            body_ << "# generated=" << buf.data() << '\n';
        }
    }

    void header(const std::vector<std::string>& columns) { row(columns); }

    void row(const std::vector<std::string>& fields) {
        for (std::size_t i = 0; i < fields.size(); ++i) {
            if (i > 0) body_ << ',';
            body_ << fields[i];
        }
        body_ << '\n';
    }

    [[nodiscard]] std::string str() const { return body_.str(); }

private:
    std::ostringstream body_;
};

std::string integer_field(std::int64_t v) { return std::to_string(v); }

struct Outcome {
    int code = kExitOk;
    void raise(int c) {
        if (code == kExitOk) code = c;
    }
};

void report_error(std::ostream& err, const char* code, std::string_view message, std::string_view extra = {}) {
    err << "error: code=" << code;
    if (!extra.empty()) err << ' ' << extra;
    err << " message=" << quoted(message) << '\n';
}

// ---- solve-ode -------------------------------------------------------------

std::string problem_name(const Params& p, const char* fallback) {
    if (p.has("rhs") && p.has("problem") && p.text("rhs", "") != p.text("problem", "")) {
        throw SpecError("'rhs' and 'problem' disagree");
    }
    return p.has("rhs") ? p.text("rhs", fallback) : p.text("problem", fallback);
}

SchemeConfig scheme_from(const Params& p, double h_fallback, const char* kind_fallback) {
    const auto alpha = read_alpha(p, 0.5);
    const auto kind = read_kind(p, kind_fallback);
    const double norm = kind_norm(kind, alpha, read_norm(p, kind));
    const double h = p.number("h", h_fallback);
    return as_spec_error([&] { return SchemeConfig(alpha, kind, h, norm, read_formula(p)); });
}

BootstrapMode boot_from(const Params& p, const NamedProblem& np, const SchemeConfig& scheme) {
    const auto seed = as_spec_error([&] { return parse_seed(p.text("seed", "euler")); });
    if (seed == SeedMode::FractionalEuler) return FractionalEuler{};
    if (!np.exact) throw SpecError("seed=exact needs a problem with a known exact solution");
    return ExactSeed{(*np.exact)(scheme.h)};
}

void solve_ode(const Params& p, Csv& csv) {
    const SchemeConfig scheme = scheme_from(p, 0.01, "caputo");
    const double T = p.number("T", 1.0);
    const NamedProblem np = as_spec_error([&] { return make_problem(problem_name(p, "expdecay"), scheme); });
    const BootstrapMode boot = boot_from(p, np, scheme);
    const auto traj = as_spec_error([&] { return integrate(np.problem, scheme, T, boot); });

    const std::size_t dim = np.problem.dimension();
    std::vector<std::string> columns = {"t"};
    for (std::size_t i = 0; i < dim; ++i) columns.push_back(dim == 1 ? "y" : "y" + std::to_string(i));
    if (np.exact) {
        for (std::size_t i = 0; i < dim; ++i) columns.push_back(dim == 1 ? "y_exact" : "y_exact" + std::to_string(i));
        columns.emplace_back("abs_error");
    }
    csv.header(columns);
    for (std::size_t k = 0; k < traj.size(); ++k) {
        std::vector<std::string> row = {format_number(traj.times[k])};
        for (double v : traj.states[k]) row.push_back(format_number(v));
        if (np.exact) {
            const Vector e = (*np.exact)(traj.times[k]);
            double worst = 0.0;
            for (std::size_t i = 0; i < dim; ++i) {
                row.push_back(format_number(e[i]));
                worst = std::max(worst, std::abs(e[i] - traj.states[k][i]));
            }
            row.push_back(format_number(worst));
        }
        csv.row(row);
    }
}

// ---- fisher ------------------------------------------------------------------

FisherConfig fisher_from(const Params& p, const FisherConfig& defaults, DerivativeKind kind) {
    FisherConfig cfg = defaults;
    cfg.kind = kind;
    cfg.alpha = read_alpha(p, defaults.alpha.value());
    cfg.delta = p.number("delta", defaults.delta);
    cfg.tau = p.number("tau", defaults.tau);
    cfg.L = p.number("L", defaults.L);
    cfg.N = p.integer("N", defaults.N);
    cfg.dt = p.number("dt", defaults.dt);
    cfg.T = p.number("T", defaults.T);
    cfg.forcing = as_spec_error([&] { return parse_forcing(p.text("forcing", "consistent")); });
    cfg.seed = as_spec_error([&] { return parse_seed(p.text("seed", "exact")); });
    cfg.norm_variant = read_norm(p, kind);
    cfg.formula = read_formula(p);
    return cfg;
}

void solve_fisher_command(const Params& p, Csv& csv, Outcome& outcome, std::ostream& err) {
    FisherConfig cfg = fisher_from(p, FisherConfig{}, read_kind(p, "caputo"));
    if (p.has("dx")) {
        if (p.has("N")) throw SpecError("give either 'dx' or 'N', not both");
        const double dx = p.number("dx", 0.0);
        if (!(dx > 0.0)) throw SpecError("dx must be positive");
        cfg.N = static_cast<int>(std::lround(cfg.L / dx));
    }
    const int every = p.integer("every", 1);
    if (every < 1) throw SpecError("every must be >= 1");
    as_spec_error([&] {
        cfg.validate();
        return 0;
    });

    Trajectory traj;
    try {
        (void)solve_fisher(cfg, &traj);
    } catch (const InstabilityError& e) {
        report_error(err, "blow_up", e.what(),
                     "kind=" + std::string(to_string(cfg.kind)) + " step=" + std::to_string(e.step()) +
                         " time=" + format_number(e.time()));
        outcome.raise(kExitBlowUp);
    }

    csv.header({"t", "x", "u_computed", "u_exact", "abs_error"});
    for (std::size_t k = 0; k < traj.size(); ++k) {
        if (k % static_cast<std::size_t>(every) != 0 && k + 1 != traj.size()) continue;
        const double t = traj.times[k];
        for (int i = 0; i <= cfg.N; ++i) {
            const double x = static_cast<double>(i) * cfg.dx();
            const double u = traj.states[k][static_cast<std::size_t>(i)];
            const double e = exact_solution(x, t, cfg.tau);
            csv.row({format_number(t), format_number(x), format_number(u), format_number(e),
                     format_number(std::abs(u - e))});
        }
    }
}

struct CellResult {
    double error = std::nan("");
    std::string status = "ok";
    double seconds = 0.0;
};

CellResult run_cell(const FisherConfig& cfg, std::ostream& err, Outcome& outcome) {
    CellResult cell;
    const auto start = std::chrono::steady_clock::now();
    try {
        cell.error = solve_fisher(cfg).report.max_error;
    } catch (const InstabilityError& e) {
        cell.status = "blowup";
        report_error(err, "blow_up", e.what(),
                     "kind=" + std::string(to_string(cfg.kind)) + " dt=" + format_number(cfg.dt) +
                         " N=" + std::to_string(cfg.N) + " step=" + std::to_string(e.step()));
        outcome.raise(kExitBlowUp);
    } catch (const ConvergenceError& e) {
        cell.status = "numerical_failure";
        report_error(err, "numerical", e.what(), "kind=" + std::string(to_string(cfg.kind)));
        outcome.raise(kExitNumerical);
    }
    cell.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return cell;
}

int grid_size(const Params& p, double L, double paper_dx) {
    const std::string spatial = p.text("spatial", "fixed");
    if (spatial == "fixed") return p.integer("N", 100);
    if (spatial == "ladder") {
        if (p.has("N")) throw SpecError("'N' is taken from the table's dx when spatial=ladder");
        return static_cast<int>(std::lround(L / paper_dx));
    }
    throw SpecError("unknown spatial mode '" + spatial + "' (fixed|ladder)");
}

struct Table1Row {
    double dt, dx;
    std::array<double, 3> paper;
};

constexpr std::array<Table1Row, 4> kTable1 = {{
    {0.25, 0.5, {6.6656e-06, 4.6187e-06, 1.4782e-06}},
    {0.0625, 0.25, {1.0653e-06, 7.1804e-07, 2.2827e-07}},
    {0.015625, 0.125, {3.3161e-07, 2.1293e-07, 6.6861e-08}},
    {0.00390625, 0.0625, {1.3995e-07, 8.3324e-08, 2.5625e-08}},
}};

struct Table2Row {
    double alpha;
    std::array<double, 3> paper;
    std::array<double, 3> paper_cpu;
};

constexpr std::array<Table2Row, 4> kTable2 = {{
    {0.21, {6.7827e-06, 4.3656e-07, 9.8489e-08}, {0.18, 0.17, 0.18}},
    {0.43, {1.0663e-05, 1.0118e-06, 2.2731e-07}, {0.18, 0.18, 0.18}},
    {0.65, {7.8794e-06, 1.0197e-06, 2.2784e-07}, {0.18, 0.18, 0.18}},
    {0.89, {2.9779e-06, 4.1988e-07, 8.9765e-08}, {0.17, 0.17, 0.17}},
}};

std::size_t kind_index(DerivativeKind kind) { return static_cast<std::size_t>(kind); }

void table_header(std::vector<std::string>& columns, const std::vector<DerivativeKind>& kinds, bool timing) {
    for (auto kind : kinds) {
        const std::string k(to_string(kind));
        columns.push_back(k + "_error");
        columns.push_back(k + "_paper_value");
        columns.push_back(k + "_status");
        if (timing) {
            columns.push_back(k + "_cpu_seconds");
            columns.push_back(k + "_paper_cpu");
        }
    }
}

void table1(const Params& p, Csv& csv, Outcome& outcome, std::ostream& err) {
    if (p.has("dt")) throw SpecError("table1 takes dt from its refinement ladder");
    const auto kinds = read_kinds(p);
    const bool timing = p.flag("timing");
    FisherConfig defaults;  // delta 10, tau 1, alpha 0.35, T 0.5, L 1

    std::vector<std::string> columns = {"dt", "paper_dx", "N", "dx", "dt_max"};
    table_header(columns, kinds, timing);
    csv.header(columns);

    for (const auto& row : kTable1) {
        std::vector<std::string> fields;
        FisherConfig probe = fisher_from(p, defaults, kinds.front());
        probe.N = grid_size(p, probe.L, row.dx);
        probe.dt = row.dt;
        as_spec_error([&] {
            probe.validate();
            return 0;
        });
        fields = {format_number(row.dt), format_number(row.dx), integer_field(probe.N), format_number(probe.dx()),
                  format_number(dt_max(probe.delta, probe.dx()))};
        for (auto kind : kinds) {
            FisherConfig cfg = fisher_from(p, defaults, kind);
            cfg.N = probe.N;
            cfg.dt = row.dt;
            const auto cell = run_cell(cfg, err, outcome);
            fields.push_back(format_number(cell.error));
            fields.push_back(format_number(row.paper[kind_index(kind)]));
            fields.push_back(cell.status);
            if (timing) {
                fields.push_back(format_number(cell.seconds));
                fields.emplace_back("");
            }
        }
        csv.row(fields);
    }
}

void table2(const Params& p, Csv& csv, Outcome& outcome, std::ostream& err) {
    if (p.has("alpha")) throw SpecError("table2 takes alpha from its rows");
    const auto kinds = read_kinds(p);
    const bool timing = p.flag("timing");
    FisherConfig defaults;
    defaults.delta = 1.0;
    defaults.dt = 0.05;
    defaults.T = 1.0;
    constexpr double kPaperDx = 0.25;

    std::vector<std::string> columns = {"alpha", "dt", "paper_dx", "N", "dx", "dt_max"};
    table_header(columns, kinds, timing);
    csv.header(columns);

    for (const auto& row : kTable2) {
        defaults.alpha = FractionalOrder(row.alpha);
        FisherConfig probe = fisher_from(p, defaults, kinds.front());
        probe.N = grid_size(p, probe.L, kPaperDx);
        as_spec_error([&] {
            probe.validate();
            return 0;
        });
        std::vector<std::string> fields = {format_number(row.alpha), format_number(probe.dt),
                                           format_number(kPaperDx),  integer_field(probe.N),
                                           format_number(probe.dx()), format_number(dt_max(probe.delta, probe.dx()))};
        for (auto kind : kinds) {
            FisherConfig cfg = fisher_from(p, defaults, kind);
            cfg.N = probe.N;
            const auto cell = run_cell(cfg, err, outcome);
            fields.push_back(format_number(cell.error));
            fields.push_back(format_number(row.paper[kind_index(kind)]));
            fields.push_back(cell.status);
            if (timing) {
                fields.push_back(format_number(cell.seconds));
                fields.push_back(format_number(row.paper_cpu[kind_index(kind)]));
            }
        }
        csv.row(fields);
    }
}

// ---- convergence / bound-check ---------------------------------------------

const char* default_problem(DerivativeKind kind) {
    switch (kind) {
        case DerivativeKind::Caputo: return "power-caputo";
        case DerivativeKind::CaputoFabrizio: return "cf-linear";
        case DerivativeKind::AtanganaBaleanuCaputo: return "abc-power";
    }
    return "expdecay";
}

void convergence(const Params& p, Csv& csv) {
    const SchemeConfig base = scheme_from(p, 0.1, "caputo");
    const double T = p.number("T", 1.0);
    const int levels = p.integer("levels", 4);
    if (levels < 2 || levels > 16) throw SpecError("levels must lie in [2, 16]");
    const int substeps = p.integer("substeps", 32);
    const std::string name = problem_name(p, default_problem(base.kind));

    csv.header({"h", "steps", "error", "eoc"});
    std::vector<ErrorSample> samples;
    for (int level = 0; level < levels; ++level) {
        const double h = base.h / std::pow(2.0, level);
        const SchemeConfig scheme(base.alpha, base.kind, h, base.norm, base.formula);
        const NamedProblem np = as_spec_error([&] { return make_problem(name, scheme); });
        const BootstrapMode boot = boot_from(p, np, scheme);
        const auto traj = as_spec_error([&] { return integrate(np.problem, scheme, T, boot); });
        double error = 0.0;
        if (np.exact) {
            error = max_error(traj, *np.exact);
        } else {
            ReferenceConfig rc;
            rc.substeps = substeps;
            error = max_error(traj, as_spec_error([&] { return reference_solution(np.problem, scheme, T, rc); }));
        }
        samples.push_back({h, error});
        std::string eoc;
        if (samples.size() >= 2 && error > 0.0 && samples[samples.size() - 2].error > 0.0) {
            eoc = format_number(observed_order(std::span(samples).last(2)).front());
        }
        csv.row({format_number(h), integer_field(step_count(T, h)), format_number(error), eoc});
    }
}

void bound_check(const Params& p, Csv& csv) {
    if (read_kind(p, "caputo") != DerivativeKind::Caputo) throw SpecError("bound-check supports kind=caputo only");
    const auto alpha = read_alpha(p, 0.5);
    const double h = p.number("h", 0.01);
    const int steps = p.integer("steps", 100);
    const double M = p.number("M", 1.0);
    ReferenceConfig rc;
    rc.substeps = p.integer("substeps", 32);
    const FormulaVariant formula = read_formula(p);
    const BoundVariant variant = formula == FormulaVariant::PaperLiteral ? BoundVariant::Printed : BoundVariant::Proof;
    if (steps < 2) throw SpecError("steps must be >= 2");

    const SchemeConfig scheme =
        as_spec_error([&] { return SchemeConfig(alpha, DerivativeKind::Caputo, h, 1.0, formula); });
    const Problem problem([](double t, std::span<const double>, std::span<double> out) { out[0] = std::sin(t); },
                          Vector{0.0});
    const double T = (static_cast<double>(steps) + 1.0) * h;
    const auto reference = as_spec_error([&] { return caputo_reference(problem, alpha, h, T, rc); });
    const auto defects = local_defects(reference, problem, scheme);

    csv.header({"n", "t", "defect", "bound", "ratio", "violation"});
    for (std::size_t k = 0; k < defects.size() && k < static_cast<std::size_t>(steps); ++k) {
        const auto n = static_cast<std::int64_t>(k + 1);
        const double bound = caputo_remainder_bound(alpha, h, n, M, variant);
        csv.row({integer_field(n), format_number(static_cast<double>(n) * h), format_number(defects[k]),
                 format_number(bound), format_number(defects[k] / bound), defects[k] > bound ? "1" : "0"});
    }
}

}  // namespace

std::string_view to_string(Command command) noexcept {
    switch (command) {
        case Command::SolveOde: return "solve-ode";
        case Command::SolveFisher: return "solve-fisher";
        case Command::Table1: return "table1";
        case Command::Table2: return "table2";
        case Command::Convergence: return "convergence";
        case Command::BoundCheck: return "bound-check";
    }
    return "?";
}

Command parse_command(std::string_view name) {
    for (auto c : {Command::SolveOde, Command::SolveFisher, Command::Table1, Command::Table2, Command::Convergence,
                   Command::BoundCheck}) {
        if (to_string(c) == name) return c;
    }
    throw std::invalid_argument("unknown command '" + std::string(name) + "'");
}

std::string format_number(double value) {
    if (std::isnan(value)) return "nan";
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    std::array<char, 40> buf{};
    std::snprintf(buf.data(), buf.size(), "%.15e", value);
    return buf.data();
}

std::map<std::string, std::string> parse_config(std::string_view text) {
    std::map<std::string, std::string> out;
    std::size_t line_no = 0;
    while (!text.empty()) {
        const auto end = text.find('\n');
        std::string_view line = text.substr(0, end);
        text = end == std::string_view::npos ? std::string_view{} : text.substr(end + 1);
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        if (trim(line).empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw std::invalid_argument("config line " + std::to_string(line_no) + ": expected key = value");
        }
        std::string key = trim(line.substr(0, eq));
        if (key.empty()) throw std::invalid_argument("config line " + std::to_string(line_no) + ": empty key");
        out[key] = trim(line.substr(eq + 1));
    }
    return out;
}

std::map<std::string, std::string> resolve_parameters(std::map<std::string, std::string> parameters) {
    const auto it = parameters.find("config");
    if (it == parameters.end()) return parameters;
    std::ifstream in(it->second);
    if (!in) throw std::invalid_argument("cannot read config file '" + it->second + "'");
    std::stringstream buffer;
    buffer << in.rdbuf();
    for (auto& [key, value] : parse_config(buffer.str())) {
        if (key == "config") throw std::invalid_argument("config files cannot include other config files");
        parameters.try_emplace(key, value);
    }
    return parameters;
}

namespace {

// Closed form of y with D y = c t^p, y(0) = 0, for each kernel.
ExactFunction monomial_solution(const SchemeConfig& scheme, double c, double p) {
    const double a = scheme.alpha.value();
    const double local = (1.0 - a) / scheme.norm;
    const double history = a / scheme.norm;
    const double ratio = gamma(p + 1.0) / gamma(p + 1.0 + a);
    switch (scheme.kind) {
        case DerivativeKind::Caputo:
            return [=](double t) { return Vector{c * ratio * std::pow(t, p + a)}; };
        case DerivativeKind::CaputoFabrizio:
            return [=](double t) {
                return Vector{c * (local * std::pow(t, p) + history * std::pow(t, p + 1.0) / (p + 1.0))};
            };
        case DerivativeKind::AtanganaBaleanuCaputo:
            return [=](double t) {
                return Vector{c * (local * std::pow(t, p) + history * ratio * std::pow(t, p + a))};
            };
    }
    return {};
}

Problem monomial_problem(double c, double p) {
    return Problem([c, p](double t, std::span<const double>, std::span<double> out) { out[0] = c * std::pow(t, p); },
                   Vector{0.0});
}

}  // namespace

NamedProblem make_problem(std::string_view name, const SchemeConfig& scheme) {
    const double a = scheme.alpha.value();
    if (name == "expdecay") {
        // D y = -y, y(0) = 1. The nonsingular kernels reduce to a rescaled rate.
        Problem problem([](double, std::span<const double> y, std::span<double> out) { out[0] = -y[0]; }, Vector{1.0});
        ExactFunction exact;
        const FractionalOrder alpha = scheme.alpha;
        switch (scheme.kind) {
            case DerivativeKind::Caputo:
                exact = [alpha](double t) { return Vector{mittag_leffler(alpha, -std::pow(t, alpha.value()))}; };
                break;
            case DerivativeKind::CaputoFabrizio: {
                const double rate = a / (scheme.norm + 1.0 - a);
                exact = [rate](double t) { return Vector{std::exp(-rate * t)}; };
                break;
            }
            case DerivativeKind::AtanganaBaleanuCaputo: {
                const double rate = a / (scheme.norm + 1.0 - a);
                exact = [alpha, rate](double t) {
                    return Vector{mittag_leffler(alpha, -rate * std::pow(t, alpha.value()))};
                };
                break;
            }
        }
        return {std::string(name), std::move(problem), std::move(exact)};
    }
    if (name == "power-caputo") {
        // Caputo solution t^3
        const double c = gamma(4.0) / gamma(4.0 - a);
        return {std::string(name), monomial_problem(c, 3.0 - a), monomial_solution(scheme, c, 3.0 - a)};
    }
    if (name == "cf-linear") return {std::string(name), monomial_problem(1.0, 1.0), monomial_solution(scheme, 1.0, 1.0)};
    if (name == "abc-power") return {std::string(name), monomial_problem(1.0, 2.0), monomial_solution(scheme, 1.0, 2.0)};
    if (name == "logistic") {
        Problem problem([](double, std::span<const double> y, std::span<double> out) { out[0] = y[0] * (1.0 - y[0]); },
                        Vector{0.5});
        std::optional<ExactFunction> exact;
        if (scheme.alpha.is_classical()) exact = [](double t) { return Vector{1.0 / (1.0 + std::exp(-t))}; };
        return {std::string(name), std::move(problem), std::move(exact)};
    }
    throw std::invalid_argument("unknown problem '" + std::string(name) +
                                "' (expdecay|power-caputo|cf-linear|abc-power|logistic)");
}

int run(const RunSpec& spec, std::ostream& out, std::ostream& err) {
    Outcome outcome;
    std::string document;
    try {
        auto values = resolve_parameters(spec.parameters);
        std::string output_path = spec.output_path;
        if (auto it = values.find("out"); it != values.end()) {
            if (output_path.empty()) output_path = it->second;
        }
        const Params params(values, allowed_keys(spec.command));
        Csv csv(!params.flag("no-timestamp"));
        switch (spec.command) {
            case Command::SolveOde: solve_ode(params, csv); break;
            case Command::SolveFisher: solve_fisher_command(params, csv, outcome, err); break;
            case Command::Table1: table1(params, csv, outcome, err); break;
            case Command::Table2: table2(params, csv, outcome, err); break;
            case Command::Convergence: convergence(params, csv); break;
            case Command::BoundCheck: bound_check(params, csv); break;
        }
        document = csv.str();

        if (output_path.empty()) {
            out << document;
        } else {
            std::ofstream file(output_path, std::ios::binary);
            file << document;
            if (!file) {
                report_error(err, "io", "cannot write '" + output_path + "'");
                return kExitIo;
            }
        }
    } catch (const SpecError& e) {
        report_error(err, "invalid_spec", e.what());
        return kExitInvalidSpec;
    } catch (const std::invalid_argument& e) {
        report_error(err, "invalid_spec", e.what());
        return kExitInvalidSpec;
    } catch (const InstabilityError& e) {
        report_error(err, "blow_up", e.what(), "step=" + std::to_string(e.step()));
        return kExitBlowUp;
    } catch (const std::exception& e) {
        report_error(err, "numerical", e.what());
        return kExitNumerical;
    }
    return outcome.code;
}

}  // namespace fracab::cli
