#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "fracab/cli.hpp"

namespace {

struct OptionSpec {
    const char* name;
    const char* help;
};

const std::vector<OptionSpec> kValueOptions = {
    {"alpha", "fractional order in (0, 1]"},
    {"kind", "caputo | cf | abc (tables also accept all)"},
    {"h", "step size"},
    {"T", "final time"},
    {"dt", "time step of the Fisher runs"},
    {"dx", "grid spacing (solve-fisher)"},
    {"delta", "diffusion coefficient"},
    {"tau", "exponent of the manufactured solution"},
    {"L", "domain length"},
    {"N", "number of spatial intervals"},
    {"forcing", "literal | consistent"},
    {"norm", "unit | gammablend"},
    {"seed", "euler | exact"},
    {"rhs", "expdecay | power-caputo | cf-linear | abc-power | logistic"},
    {"problem", "alias of --rhs"},
    {"levels", "number of step halvings (convergence)"},
    {"substeps", "fine cells per step in the reference solver"},
    {"steps", "number of steps (bound-check)"},
    {"M", "bound on |f'''| (bound-check)"},
    {"every", "write every k-th time level (solve-fisher)"},
    {"spatial", "fixed | ladder: grid of the table runs"},
    {"config", "key = value file; flags override it"},
};

const std::vector<OptionSpec> kFlags = {
    {"paper-literal", "use the formulas as typeset instead of the rederived ones"},
    {"no-timestamp", "omit the '# generated=' line"},
    {"timing", "add CPU-time columns to table output"},
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Two-step fractional Adams-Bashforth experiments"};
    app.require_subcommand(1);

    std::map<std::string, std::map<std::string, std::string>> values;
    std::map<std::string, std::map<std::string, bool>> flags;
    std::map<std::string, std::string> outputs;

    const std::vector<std::pair<fracab::cli::Command, const char*>> commands = {
        {fracab::cli::Command::SolveOde, "integrate a built-in scalar problem"},
        {fracab::cli::Command::SolveFisher, "solve the manufactured Fisher problem"},
        {fracab::cli::Command::Table1, "refinement ladder at delta=10, alpha=0.35"},
        {fracab::cli::Command::Table2, "alpha sweep at delta=1"},
        {fracab::cli::Command::Convergence, "errors and observed orders under step halving"},
        {fracab::cli::Command::BoundCheck, "local defects against the remainder bound"},
    };

    for (const auto& [command, description] : commands) {
        const std::string name(fracab::cli::to_string(command));
        auto* sub = app.add_subcommand(name, description);
        sub->set_help_flag("--help", "print this help message and exit");  // -h would shadow --h
        for (const auto& opt : kValueOptions) sub->add_option("--" + std::string(opt.name), values[name][opt.name], opt.help);
        for (const auto& opt : kFlags) sub->add_flag("--" + std::string(opt.name), flags[name][opt.name], opt.help);
        sub->add_option("--out", outputs[name], "output CSV path (default: stdout)");
    }

    CLI11_PARSE(app, argc, argv);

    for (const auto& [command, _] : commands) {
        const std::string name(fracab::cli::to_string(command));
        auto* sub = app.get_subcommand(name);
        if (!sub->parsed()) continue;

        fracab::cli::RunSpec spec;
        spec.command = command;
        for (const auto& opt : kValueOptions) {
            if (sub->count("--" + std::string(opt.name)) > 0) spec.parameters[opt.name] = values[name][opt.name];
        }
        for (const auto& opt : kFlags) {
            if (flags[name][opt.name]) spec.parameters[opt.name] = "true";
        }
        spec.output_path = outputs[name];
        return fracab::cli::run(spec, std::cout, std::cerr);
    }
    return 1;
}
