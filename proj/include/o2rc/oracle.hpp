#pragma once

#include <functional>

#include "o2rc/dilute_potts.hpp"
#include "o2rc/graph.hpp"
#include "o2rc/weight.hpp"

namespace o2rc {

// Ground truth on tiny instances: tensor-product angle quadrature per
// unpinned vertex combined with exhaustive enumeration of bond outcomes
// weighted by the per-edge laws. No sampling anywhere.
//
// The angle rule is Gauss-Legendre within each of the eight arcs bounded by
// the multiples of pi/4: the bond-law integrands are analytic inside an arc
// but only continuous across the reflection axes and quadrant boundaries,
// which defeats the plain periodic trapezoid rule.

struct OracleSpec {
    const Graph* g = nullptr;
    WeightFunction w = WeightFunction::xy_exp(1.0);
    int grid = 64;                         // angle nodes per vertex, multiple of 8
    double boundary_angle = 0.0;           // pinned value on the graph boundary
    double budget = static_cast<double>(1u << 30); // elementary evaluations
};

enum class O2Observable {
    cos1,
    cos2,
    connect,          // P(site <-> boundary), single-axis bonds
    connect_both,     // P(site <-> boundary in both pair families)
    cos1_not_connect, // E[cos(theta) 1{site not connected}]
    cos2_not_both,    // E[cos(2 theta) 1{not connected in both}]
};

struct OracleResult {
    double value = 0.0; // finer-grid value
    double error = 0.0; // |E_M - E_2M| grid-doubling estimate
};

// Expectation under the Gibbs measure of the weight function with the
// graph's boundary pinned at boundary_angle. Throws BudgetError when
// grid^unpinned times the bond-outcome factor exceeds the budget.
OracleResult exact_o2_expectation(const OracleSpec& spec, O2Observable obs, int site);

// Same expectation at a single grid size (no error estimate).
double exact_o2_expectation_at(const OracleSpec& spec, O2Observable obs, int site, int grid);

struct DPOracleSpec {
    const Graph* g = nullptr;
    DilutePottsParams params;
    int boundary_spin = 1; // pinned value when the graph has a boundary
    double budget = static_cast<double>(1u << 30);
};

// Exact expectation of f under the dilute Potts Gibbs measure, enumerating
// (Q+1)^unpinned states with log-stabilized weights.
double exact_dp_expectation(const DPOracleSpec& spec,
                            const std::function<double(const std::vector<int>&)>& f);

// Both sides of the correlation/connectivity identity, fully enumerated
// (spins and bond outcomes).
struct DPTauExact {
    double lhs = 0.0; // E[delta | valid] - 1/Q
    double rhs = 0.0; // (1 - 1/Q) P(x <-> y | valid)
};
DPTauExact dp_tau_exact(const DPOracleSpec& spec, int x, int y);

} // namespace o2rc
