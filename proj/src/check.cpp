#include "hyperfc/check.hpp"

#include "hyperfc/errors.hpp"

#include <algorithm>
#include <cmath>

namespace hfc {

Check& CheckReport::near(std::string name, std::string ref, double measured, double expected,
                         double tolerance) {
    const bool ok = std::isfinite(measured) && std::abs(measured - expected) <= tolerance;
    checks.push_back({std::move(name), std::move(ref), measured, expected, tolerance, ok, CheckKind::near});
    return checks.back();
}

Check& CheckReport::at_most(std::string name, std::string ref, double measured, double bound) {
    const bool ok = std::isfinite(measured) && measured <= bound;
    checks.push_back({std::move(name), std::move(ref), measured, bound, 0.0, ok, CheckKind::at_most});
    return checks.back();
}

Check& CheckReport::holds(std::string name, std::string ref, bool ok) {
    checks.push_back({std::move(name), std::move(ref), ok ? 1.0 : 0.0, 1.0, 0.0, ok, CheckKind::holds});
    return checks.back();
}

Check& CheckReport::note(std::string name, std::string ref, double measured) {
    checks.push_back({std::move(name), std::move(ref), measured, measured, 0.0, true, CheckKind::note});
    return checks.back();
}

void CheckReport::append(const CheckReport& other, const std::string& prefix) {
    for (auto c : other.checks) {
        if (!prefix.empty()) c.name = prefix + "." + c.name;
        checks.push_back(std::move(c));
    }
}

void override_tolerance(Check& check, double value) {
    const bool finite = std::isfinite(check.measured);
    switch (check.kind) {
        case CheckKind::near:
            check.tolerance = value;
            check.pass = finite && std::abs(check.measured - check.expected) <= value;
            return;
        case CheckKind::at_most:
            check.expected = value;
            check.pass = finite && check.measured <= value;
            return;
        default: throw ConfigError("check " + check.name + " has no tolerance");
    }
}

bool CheckReport::all_pass() const {
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

std::size_t CheckReport::passed() const {
    return static_cast<std::size_t>(
        std::count_if(checks.begin(), checks.end(), [](const Check& c) { return c.pass; }));
}

const Check* CheckReport::find(const std::string& name) const {
    auto it = std::find_if(checks.begin(), checks.end(), [&](const Check& c) { return c.name == name; });
    return it == checks.end() ? nullptr : &*it;
}

}  // namespace hfc
