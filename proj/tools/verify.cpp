#include "cli.hpp"

#include "hyperfc/errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>

namespace hfc::cli {

void write_atomic(const std::filesystem::path& path, const std::string& content) {
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary);
        if (!out) throw std::ios_base::failure("cannot open " + tmp.string());
        out << content;
        if (!out.flush()) throw std::ios_base::failure("write failed for " + tmp.string());
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp, ec);
        throw std::ios_base::failure("cannot move report into " + path.string());
    }
}

CheckReport run_suite(const SuiteConfig& config) {
    auto report = hfc::run_suite(config.suite, config.options);
    for (const auto& [name, value] : config.tolOverrides) {
        auto it = std::find_if(report.checks.begin(), report.checks.end(), [&](const Check& c) { return c.name == name; });
        if (it == report.checks.end()) throw ConfigError("no check named " + name);
        override_tolerance(*it, value);
    }
    return report;
}

std::string report_json(const SuiteConfig& config, const CheckReport& report) {
    using nlohmann::ordered_json;
    auto number = [](double v) { return std::isfinite(v) ? ordered_json(v) : ordered_json(nullptr); };
    ordered_json doc;
    doc["suite"] = config.suite;
    doc["model"] = config.options.model ? std::string(model_name(*config.options.model)) : "all";
    doc["seed"] = config.options.seed;
    const auto& g = config.options.grid;
    doc["grid"] = {{"xMax", g.xMax ? ordered_json(*g.xMax) : ordered_json(nullptr)},
                   {"n", g.panels ? ordered_json(*g.panels * 16) : ordered_json(nullptr)}};
    doc["checks"] = ordered_json::array();
    for (const auto& c : report.checks)
        doc["checks"].push_back({{"name", c.name},
                                 {"ref", c.ref},
                                 {"measured", number(c.measured)},
                                 {"expected", number(c.expected)},
                                 {"tolerance", number(c.tolerance)},
                                 {"pass", c.pass}});
    return doc.dump(2) + "\n";
}

}  // namespace hfc::cli
