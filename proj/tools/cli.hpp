#pragma once

#include "hyperfc/check.hpp"
#include "hyperfc/suites.hpp"

#include <filesystem>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace hfc::cli {

enum ExitCode : int { ok = 0, checkFailure = 1, usage = 2, io = 3 };

struct SuiteConfig {
    std::string suite;
    SuiteOptions options;
    std::map<std::string, double> tolOverrides;
    std::filesystem::path outPath = "report.json";
};

// Writes through a temporary file renamed into place. Throws std::ios_base::failure.
void write_atomic(const std::filesystem::path& path, const std::string& content);

// Runs the suite, applies tolerance overrides and writes the JSON report.
// Throws ConfigError for an unknown suite, model or tolerance name.
CheckReport run_suite(const SuiteConfig& config);
std::string report_json(const SuiteConfig& config, const CheckReport& report);

// Prints the table of a JSON report; returns the exit code.
int print_report(const std::filesystem::path& path);

struct CurveParams {
    std::string kind;
    std::optional<ModelTag> model;
    GridSpec grid;
    std::uint64_t seed = 2024;
    double lambda = 1.0;
    double t = 1.0;
    double p = 4.0;
    double s = 2.0;
    std::string f = "sech3";
    std::filesystem::path outPath;
};

struct Curve {
    std::vector<std::string> header;
    std::vector<std::vector<double>> columns;
};

// Throws ConfigError when the parameters do not fit the kind.
Curve build_curve(const CurveParams& params);
std::string curve_csv(const Curve& curve);

}  // namespace hfc::cli
