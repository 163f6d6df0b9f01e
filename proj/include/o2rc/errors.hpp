#pragma once

#include <stdexcept>
#include <string>

namespace o2rc {

// Joint pair-bond law (p, q, c) violates max(0, p+q-1) <= c <= min(p, q)
// beyond numerical tolerance. Carries the offending values plus, when the
// failure happens while sampling, the edge and spin angles.
class FeasibilityError : public std::runtime_error {
public:
    FeasibilityError(double p, double q, double c, const std::string& context = "")
        : std::runtime_error("infeasible pair-bond law: p=" + std::to_string(p) +
                             " q=" + std::to_string(q) + " c=" + std::to_string(c) +
                             (context.empty() ? "" : " at " + context)),
          p(p), q(q), c(c) {}
    double p, q, c;
};

// Exact-oracle state space exceeds the configured work budget.
class BudgetError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Ratio estimate whose denominator is statistically consistent with zero.
class UndefinedRatioError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Estimator received no usable samples (e.g. every snapshot had a vacancy
// at one of the probed sites).
class InsufficientDataError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Experiment configuration failed validation.
class ConfigError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Result file could not be written or read.
class IoError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace o2rc
