#include "cli.hpp"

#include "hyperfc/errors.hpp"

#include <CLI11.hpp>

#include <iostream>

namespace {

using namespace hfc;
using namespace hfc::cli;

std::optional<ModelTag> model_option(const std::string& name) {
    if (name.empty() || name == "all") return std::nullopt;
    return parse_model(name);
}

GridSpec grid_option(const std::optional<double>& xMax, const std::optional<int>& nodes) {
    GridSpec spec;
    if (xMax) {
        if (!(*xMax > 0.0)) throw ConfigError("--xmax must be positive");
        spec.xMax = *xMax;
    }
    if (nodes) {
        if (*nodes <= 0 || *nodes % 16 != 0) throw ConfigError("--nodes must be a positive multiple of 16");
        spec.panels = *nodes / 16;
    }
    return spec;
}

std::map<std::string, double> tolerance_option(const std::vector<std::string>& entries) {
    std::map<std::string, double> out;
    for (const auto& e : entries) {
        const auto eq = e.rfind('=');
        if (eq == std::string::npos || eq == 0) throw ConfigError("--tol expects <name>=<value>, got " + e);
        try {
            std::size_t used = 0;
            const double value = std::stod(e.substr(eq + 1), &used);
            if (used != e.size() - eq - 1) throw std::invalid_argument(e);
            out[e.substr(0, eq)] = value;
        } catch (const std::logic_error&) {
            throw ConfigError("--tol value is not a number: " + e);
        }
    }
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Verification suites and curve export for hypergroup harmonic analysis"};
    app.require_subcommand(1);

    std::string suite;
    std::string model;
    std::optional<double> xMax;
    std::optional<int> nodes;
    std::uint64_t seed = 2024;
    std::vector<std::string> tolerances;
    std::string reportOut = "report.json";
    std::vector<std::string> suiteNames;
    for (auto n : suite_names()) suiteNames.emplace_back(n);
    const std::vector<std::string> modelNames{"cosh", "mehler", "sl2c", "all"};

    auto* verify = app.add_subcommand("verify", "Run a verification suite and write a JSON report");
    verify->add_option("--suite", suite, "Suite name")->required()->check(CLI::IsMember(suiteNames));
    verify->add_option("--model", model, "Restrict to one model")->check(CLI::IsMember(modelNames));
    verify->add_option("--xmax", xMax, "Grid length override");
    verify->add_option("--nodes", nodes, "Grid node count override (multiple of 16)");
    verify->add_option("--seed", seed, "Seed of the random trials");
    verify->add_option("--tol", tolerances, "Tolerance override <check>=<value>, repeatable");
    verify->add_option("--out", reportOut, "Report path");

    CurveParams curve;
    std::string curveModel;
    std::string curveOut;
    auto* curveCmd = app.add_subcommand("curve", "Export a curve as CSV");
    curveCmd->add_option("kind", curve.kind, "character | transform | wave | growth | variation")
        ->required()
        ->check(CLI::IsMember({"character", "transform", "wave", "growth", "variation"}));
    curveCmd->add_option("--model", curveModel, "Model")->check(CLI::IsMember(modelNames));
    curveCmd->add_option("--lambda", curve.lambda, "Spectral parameter (character)");
    curveCmd->add_option("--t", curve.t, "Time (wave)");
    curveCmd->add_option("--p", curve.p, "Exponent (growth)");
    curveCmd->add_option("--s", curve.s, "Variation exponent (variation)");
    curveCmd->add_option("--f", curve.f, "Function: sech3 | sech5 | gauss (transform); cosech | sinc | gauss (variation)");
    curveCmd->add_option("--xmax", xMax, "Grid length override");
    curveCmd->add_option("--nodes", nodes, "Grid node count override (multiple of 16)");
    curveCmd->add_option("--seed", seed, "Seed of the random data (growth)");
    curveCmd->add_option("--out", curveOut, "CSV path (default <kind>.csv)");

    std::string reportIn;
    auto* reportCmd = app.add_subcommand("report", "Summarize a JSON report");
    reportCmd->add_option("path", reportIn, "Report path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (app.exit(e) == 0) return ok;
        const auto* sub = !app.get_subcommands().empty() ? app.get_subcommands().front() : &app;
        std::cerr << "\n" << sub->help();
        return usage;
    }

    try {
        if (*verify) {
            SuiteConfig config{suite, {model_option(model), grid_option(xMax, nodes), seed}, tolerance_option(tolerances),
                               reportOut};
            const auto report = cli::run_suite(config);
            write_atomic(config.outPath, report_json(config, report));
            std::cout << report.passed() << "/" << report.checks.size() << " checks passed; report written to "
                      << config.outPath.string() << "\n";
            for (const auto& c : report.checks)
                if (!c.pass) std::cout << "FAIL " << c.name << " measured " << c.measured << "\n";
            return report.all_pass() ? ok : checkFailure;
        }
        if (*curveCmd) {
            curve.model = model_option(curveModel);
            curve.grid = grid_option(xMax, nodes);
            curve.seed = seed;
            curve.outPath = curveOut.empty() ? curve.kind + ".csv" : curveOut;
            write_atomic(curve.outPath, curve_csv(build_curve(curve)));
            std::cout << "wrote " << curve.outPath.string() << "\n";
            return ok;
        }
        return print_report(reportIn);
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n\n" << app.help();
        return usage;
    } catch (const std::ios_base::failure& e) {
        std::cerr << "I/O error: " << e.what() << "\n";
        return io;
    } catch (const std::filesystem::filesystem_error& e) {
        std::cerr << "I/O error: " << e.what() << "\n";
        return io;
    }
}
