#pragma once

// Verification suites. Each suite runs one experiment and reports a list of
// checks (measured value, reference, error metric, tolerance).

#include <optional>
#include <string>
#include <vector>

namespace xlab {

struct Check {
    std::string name;
    double measured = 0.0;
    double reference = 0.0;  // NaN when the check is a bound
    double error = 0.0;      // the quantity compared against tolerance
    double tolerance = 0.0;
    bool passed = false;
    std::string note;
};

struct SuiteReport {
    std::string suite;
    bool passed = true;
    double seconds = 0.0;
    std::vector<Check> checks;
    std::vector<std::string> notes;
};

struct VerifyOptions {
    /// Replaces the tolerance of the suite's headline checks.
    std::optional<double> tolerance;
    /// Working precision of the long sweeps; binary64 keeps n = 512 fast.
    int precision_bits = 53;
};

/// circle-exact, method-equivalence, circle-jump, interval-jump,
/// lemniscate-jump, ellipse-jump, properties, continuity.
const std::vector<std::string>& suite_names();

/// Throws InputError for an unknown name.
SuiteReport run_suite(const std::string& name, const VerifyOptions& options = {});

std::string to_json(const std::vector<SuiteReport>& reports);
/// One line per check and a verdict line per suite.
std::string to_text(const SuiteReport& report);

}  // namespace xlab
