#include "cli.hpp"

#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>

namespace hfc::cli {
namespace {

double number(const nlohmann::json& v) {
    return v.is_null() ? std::numeric_limits<double>::quiet_NaN() : v.get<double>();
}

}  // namespace

int print_report(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        std::cerr << "cannot read " << path << "\n";
        return io;
    }
    std::vector<Check> checks;
    try {
        const auto doc = nlohmann::json::parse(in);
        for (const auto& c : doc.at("checks")) {
            Check check;
            check.name = c.at("name").get<std::string>();
            check.measured = number(c.at("measured"));
            check.expected = number(c.at("expected"));
            check.tolerance = number(c.at("tolerance"));
            check.pass = c.at("pass").get<bool>();
            checks.push_back(std::move(check));
        }
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "malformed report " << path << ": " << e.what() << "\n";
        return io;
    }
    if (checks.empty()) {
        std::cout << "0 checks\n";
        return checkFailure;
    }
    std::size_t passed = 0;
    std::printf("   %-60s %14s %14s %10s  %s\n", "check", "measured", "expected", "tolerance", "result");
    for (const auto& c : checks) {
        passed += c.pass ? 1 : 0;
        std::printf("%s %-60s %14.6g %14.6g %10.3g  %s\n", c.pass ? "  " : ">>", c.name.c_str(), c.measured,
                    c.expected, c.tolerance, c.pass ? "pass" : "FAIL");
    }
    std::printf("%zu/%zu checks passed\n", passed, checks.size());
    return passed == checks.size() ? ok : checkFailure;
}

}  // namespace hfc::cli
