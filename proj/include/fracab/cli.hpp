#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "fracab/ab2_schemes.hpp"
#include "fracab/error_analysis.hpp"

namespace fracab::cli {

enum class Command { SolveOde, SolveFisher, Table1, Table2, Convergence, BoundCheck };

[[nodiscard]] std::string_view to_string(Command command) noexcept;
[[nodiscard]] Command parse_command(std::string_view name);

/// Parameters are kept as strings and validated by run(). Keys use the flag
/// spelling without dashes ("alpha", "paper-literal", ...). A "config" entry
/// names a key = value file whose entries fill any key not already present.
struct RunSpec {
    Command command = Command::SolveOde;
    std::map<std::string, std::string> parameters;
    std::string output_path;  // empty: write to the `out` stream
};

/// Exit codes of run().
inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalidSpec = 2;
inline constexpr int kExitBlowUp = 3;
inline constexpr int kExitNumerical = 4;
inline constexpr int kExitIo = 5;

/// Executes the spec, writing CSV to the output path (or `out`) and
/// machine-readable `error: code=... message=...` lines to `err`.
int run(const RunSpec& spec, std::ostream& out, std::ostream& err);

/// Parses line-oriented `key = value` text; `#` starts a comment.
[[nodiscard]] std::map<std::string, std::string> parse_config(std::string_view text);

/// Merges the file named by parameters["config"], flags taking precedence.
[[nodiscard]] std::map<std::string, std::string> resolve_parameters(std::map<std::string, std::string> parameters);

/// A scalar test problem with closed forms where they exist.
struct NamedProblem {
    std::string name;
    Problem problem;
    /// Exact solution under the given scheme, when one is known.
    std::optional<ExactFunction> exact;
};

/// expdecay, power-caputo, cf-linear, abc-power, logistic.
[[nodiscard]] NamedProblem make_problem(std::string_view name, const SchemeConfig& scheme);

/// 16 significant digits, locale independent.
[[nodiscard]] std::string format_number(double value);

}  // namespace fracab::cli
