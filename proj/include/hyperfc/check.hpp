#pragma once

#include <string>
#include <vector>

namespace hfc {

enum class CheckKind { near, at_most, holds, note };

struct Check {
    std::string name;
    std::string ref;  // short label of the identity or bound being exercised
    double measured = 0.0;
    double expected = 0.0;
    double tolerance = 0.0;
    bool pass = false;
    CheckKind kind = CheckKind::note;
};

// Replaces the tolerance of a near check or the bound of an at_most check and
// re-evaluates it. Throws ConfigError for holds and note checks.
void override_tolerance(Check& check, double value);

struct CheckReport {
    std::vector<Check> checks;

    // Records |measured - expected| <= tolerance.
    Check& near(std::string name, std::string ref, double measured, double expected,
                double tolerance);
    // Records measured <= bound.
    Check& at_most(std::string name, std::string ref, double measured, double bound);
    // Records a boolean outcome; measured is 1 or 0.
    Check& holds(std::string name, std::string ref, bool ok);
    // Records a value for the record only; always passes.
    Check& note(std::string name, std::string ref, double measured);

    void append(const CheckReport& other, const std::string& prefix = {});
    [[nodiscard]] bool all_pass() const;
    [[nodiscard]] std::size_t passed() const;
    [[nodiscard]] const Check* find(const std::string& name) const;
};

}  // namespace hfc
