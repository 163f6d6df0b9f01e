#pragma once

#include <string>
#include <vector>

#include "o2rc/dilute_potts.hpp"

namespace o2rc {

// Deterministic identity suites: every check evaluates a closed-form
// identity (Radon-Nikodym = 1, pair-law case identities, feasibility,
// Chapman-Kolmogorov, detailed balance, ...) with fixed seeds and reports
// the worst residual.

struct VerifyCheck {
    std::string name;
    double residual = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

struct VerifyReport {
    std::string suite;
    std::vector<VerifyCheck> checks;
    bool all_pass() const {
        for (const auto& c : checks)
            if (!c.pass) return false;
        return true;
    }
};

// suite in {kernels, bonds, lemmas, dilute, all}; unknown names throw
// std::invalid_argument.
VerifyReport run_verify_suite(const std::string& suite);

std::string format_report(const VerifyReport& r);

// Transition matrix by scaling-and-squaring matrix exponential of the
// explicit rate matrix; the independent oracle for the closed forms.
std::vector<std::vector<double>> dp_transition_matrix_oracle(const DilutePottsParams& p);

} // namespace o2rc
