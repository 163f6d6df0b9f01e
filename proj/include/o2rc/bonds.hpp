#pragma once

#include <string>
#include <vector>

#include "o2rc/errors.hpp"
#include "o2rc/graph.hpp"
#include "o2rc/spin_state.hpp"

namespace o2rc {

// Conditional bond laws for the circle spin models, the correlated pair-bond
// law for the two diagonal axes, and the cluster swap maps they make
// measure preserving.

// P(e_xy = 1 | spins) for one reflection axis:
//   (1 - w(R u_x, u_y) / w(u_x, u_y)) when u_x, u_y lie strictly on the same
//   side of the axis, 0 otherwise (spins on the axis count as not same-side).
double single_bond_prob(const WeightFunction& w, Angle ux, Angle uy, const ReflectionAxis& axis);

// Joint law of the two bond families on one edge: marginals p (axis R1) and
// q (axis R2), joint-open probability c. The four cell probabilities are
// stored explicitly; pair_bond_law computes them in closed form so that the
// small cells keep relative accuracy instead of being left to a q - c style
// subtraction.
struct JointBondLaw {
    double p = 0.0, q = 0.0, c = 0.0;

    double both_open() const { return c; }
    double only_1() const { return b1_; }
    double only_2() const { return b2_; }
    double both_closed() const { return b0_; }

    // Validates max(0, p+q-1) <= c <= min(p, q); violations beyond `tol`
    // throw FeasibilityError, smaller ones are snapped onto the interval
    // (pure floating-point noise, an out-of-range cell probability of order
    // 1e-17 would otherwise poison the four-cell sampler). Entry point for
    // custom choices of c; cells are derived by subtraction here.
    static JointBondLaw make(double p, double q, double c, double tol = 1e-9);

    static JointBondLaw from_cells(double c, double b1, double b2, double b0, double tol = 1e-9);

private:
    double b1_ = 0.0, b2_ = 0.0, b0_ = 1.0;
};

// Evaluation arguments of the pair law: the four weight arguments expressed
// through s = thx + thy and d = thx - thy. Reflecting the x spin by R1 acts
// on them as the exact float permutation (d0, dr1, dr2, dop) ->
// (dr1, d0, -dop, -dr2), which keeps the case-identity checks free of
// argument-perturbation noise (the weights are even, so negation is free).
struct PairBondArgs {
    double thx = 0.0, thy = 0.0; // spin angles, used for side classification
    double d0 = 0.0;             // w(u_x, u_y) argument: thx - thy
    double dr1 = 0.0;            // w(R1 u_x, u_y): pi/2 - (thx + thy)
    double dr2 = 0.0;            // w(R2 u_x, u_y): pi/2 + (thx + thy), even-reduced
    double dop = 0.0;            // w(u_x, -u_y): thx - thy - pi

    static PairBondArgs from_angles(Angle ux, Angle uy);
    PairBondArgs reflected_r1() const;
};

// The pair-bond law with marginals from the R1/R2 single-bond formulas and c
// from the reflection identity
//   c = (1 - w(R1 u_x, u_y)/w - w(R2 u_x, u_y)/w + w(u_x, -u_y)/w)
//       * 1[same quadrant class].
// Alternative choices of c can be built with JointBondLaw::make.
JointBondLaw pair_bond_law(const WeightFunction& w, Angle ux, Angle uy);
JointBondLaw pair_bond_law(const WeightFunction& w, const PairBondArgs& args);

// Per-edge independent Bernoulli(single_bond_prob), consuming exactly one
// uniform per edge in edge order.
BondConfig sample_bonds(const SpinConfig& cfg, const ReflectionAxis& axis, RngStream& rng);

// Two bond families with the per-edge four-outcome joint law; one uniform
// per edge in edge order.
struct PairBondConfig {
    std::vector<std::uint8_t> open1, open2;
};
PairBondConfig sample_pair_bonds(const SpinConfig& cfg, RngStream& rng);

// e_xy = 1 only between strictly same-side endpoint spins.
bool bonds_consistent(const SpinConfig& cfg, const BondConfig& bonds, const ReflectionAxis& axis);

// Swap map sigma_z: if z's cluster touches the boundary the configuration is
// unchanged; otherwise every spin of the cluster is reflected across the
// axis. Bonds are untouched. Returns whether the cluster was flipped.
bool apply_swap_map(SpinConfig& cfg, const BondConfig& bonds, int z, const ReflectionAxis& axis);

// Radon-Nikodym derivative of the image of the extended law (u, e) under
// sigma_z, as a product over the edges leaving C_z:
//   prod  [w(R u_x, u_y) / w(u_x, u_y)] [(1 - p(R u_x, u_y)) / (1 - p(u_x, u_y))].
// Contract: identically 1 for the matching bond law. `perturb` rescales the
// bond probability inside the ratio (negative control: perturb != 1 breaks
// the identity).
double radon_nikodym_single(const SpinConfig& cfg, const BondConfig& bonds, int z,
                            const ReflectionAxis& axis, double perturb = 1.0);

// Pair-family swap map sigma_i^z (family in {1, 2} picking R1 or R2):
// reflects the family-i cluster of z when it misses the boundary.
bool apply_pair_swap_map(SpinConfig& cfg, const PairBondConfig& bonds, int z, int family);

// Residuals of the per-edge measure-preservation identities from the
// boundary-edge case analysis of the pair swap map:
//   w(R1 u_x, u_y)/w(u_x, u_y) * b^0(R1 u_x, u_y)/b^0(u_x, u_y) = 1
// and the b^2 analogue (b^0 = both closed, b^2 = only bond 2 open). The b^2
// identity is vacuous when b^2(u_x, u_y) = 0 (the state cannot occur).
struct CaseIdentity {
    std::string name;
    double residual = 0.0;
    bool applicable = true;
};
std::vector<CaseIdentity> pair_swap_case_identities(const WeightFunction& w, Angle ux, Angle uy);

ClusterPartition pair_components(const Graph& g, const PairBondConfig& bonds, int family);

} // namespace o2rc
