#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace wallach {

enum class Suite { All, Theorem1, Theorem2, Inclusion, Kahler, Asymptotics };

Suite parse_suite(std::string_view name);
std::string_view to_string(Suite suite);

/// One measured quantity compared against a pinned threshold.
struct Check {
    std::string name;
    std::optional<double> a;
    double measured;
    std::string comparison;  // "<=", ">=", ">", "==", "<"
    double threshold;
    bool passed;
    std::string detail;
};

struct VerifyReport {
    std::string suite;
    std::vector<double> a_values;
    std::uint64_t seed;
    std::vector<Check> checks;

    bool passed() const;
};

/// Default parameter sweep of each suite (the Kaehler suite only runs at 1/6).
std::vector<double> default_sweep(Suite suite);

/// Runs a suite. When a_values is empty the suite's default sweep is used.
/// The Kaehler suite throws DomainError unless every a is 1/6; within All it
/// always runs at 1/6 while the other suites use a_values.
VerifyReport run_suite(Suite suite, const std::vector<double>& a_values, std::uint64_t seed);

/// Least-squares slope of log|err| against log t.
double loglog_slope(const std::vector<double>& ts, const std::vector<double>& errs);

}  // namespace wallach
