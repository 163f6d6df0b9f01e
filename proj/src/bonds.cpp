#include "o2rc/bonds.hpp"

#include <algorithm>
#include <cmath>

namespace o2rc {

double single_bond_prob(const WeightFunction& w, Angle ux, Angle uy, const ReflectionAxis& axis) {
    if (!axis.same_side(ux.rad(), uy.rad())) return 0.0;
    double ratio = std::exp(w.log_eval_diff(axis.reflect(ux.rad()) - uy.rad()) -
                            w.log_eval_diff(ux.rad() - uy.rad()));
    double p = 1.0 - ratio;
    return std::clamp(p, 0.0, 1.0);
}

JointBondLaw JointBondLaw::make(double p, double q, double c, double tol) {
    double lo = std::max(0.0, p + q - 1.0);
    double hi = std::min(p, q);
    if (c < lo - tol || c > hi + tol) throw FeasibilityError(p, q, c);
    JointBondLaw law;
    law.p = p;
    law.q = q;
    law.c = std::clamp(c, lo, hi);
    law.b1_ = std::max(0.0, p - law.c);
    law.b2_ = std::max(0.0, q - law.c);
    law.b0_ = std::max(0.0, 1.0 - p - q + law.c);
    return law;
}

JointBondLaw JointBondLaw::from_cells(double c, double b1, double b2, double b0, double tol) {
    double p = c + b1, q = c + b2;
    if (std::min({c, b1, b2, b0}) < -tol) throw FeasibilityError(p, q, c);
    JointBondLaw law;
    law.c = std::max(0.0, c);
    law.b1_ = std::max(0.0, b1);
    law.b2_ = std::max(0.0, b2);
    law.b0_ = std::max(0.0, b0);
    law.p = law.c + law.b1_;
    law.q = law.c + law.b2_;
    return law;
}

PairBondArgs PairBondArgs::from_angles(Angle ux, Angle uy) {
    PairBondArgs a;
    a.thx = ux.rad();
    a.thy = uy.rad();
    double s = a.thx + a.thy;
    a.d0 = a.thx - a.thy;
    a.dr1 = kPi / 2 - s;
    a.dr2 = kPi / 2 + s;
    a.dop = a.d0 - kPi;
    return a;
}

PairBondArgs PairBondArgs::reflected_r1() const {
    PairBondArgs a;
    a.thx = ReflectionAxis::diag1().reflect(thx);
    a.thy = thy;
    a.d0 = dr1;
    a.dr1 = d0;
    a.dr2 = -dop;
    a.dop = -dr2;
    return a;
}

JointBondLaw pair_bond_law(const WeightFunction& w, const PairBondArgs& args) {
    bool side1 = ReflectionAxis::diag1().same_side(args.thx, args.thy);
    bool side2 = ReflectionAxis::diag2().same_side(args.thx, args.thy);
    bool joint = side1 && side2 && same_quadrant_class(args.thx, args.thy);
    double w0 = w.eval_diff(args.d0);

    double c = 0.0, b1 = 0.0, b2 = 0.0, b0 = 1.0;
    if (joint) {
        double ratio1 = w.eval_diff(args.dr1) / w0;
        double ratio2 = w.eval_diff(args.dr2) / w0;
        double ratio_op = w.eval_diff(args.dop) / w0;
        c = 1.0 - ratio1 - ratio2 + ratio_op;
        b0 = ratio_op;
        b1 = w.eval_difference(args.dr2, args.dop) / w0; // p - c
        b2 = w.eval_difference(args.dr1, args.dop) / w0; // q - c
    } else if (side1) { // opposite sides of the R2 axis: q = c = 0
        b1 = w.eval_difference(args.d0, args.dr1) / w0;
        b0 = w.eval_diff(args.dr1) / w0;
    } else if (side2) { // opposite sides of the R1 axis: p = c = 0
        b2 = w.eval_difference(args.d0, args.dr2) / w0;
        b0 = w.eval_diff(args.dr2) / w0;
    }
    return JointBondLaw::from_cells(c, b1, b2, b0);
}

JointBondLaw pair_bond_law(const WeightFunction& w, Angle ux, Angle uy) {
    return pair_bond_law(w, PairBondArgs::from_angles(ux, uy));
}

BondConfig sample_bonds(const SpinConfig& cfg, const ReflectionAxis& axis, RngStream& rng) {
    const Graph& g = cfg.graph();
    BondConfig b;
    b.open.resize(g.edge_count());
    for (int e = 0; e < g.edge_count(); ++e) {
        const Edge& ed = g.edges()[e];
        double u = rng.uniform();
        double p = single_bond_prob(cfg.weight(), Angle(cfg.theta(ed.u)), Angle(cfg.theta(ed.v)), axis);
        b.open[e] = u < p;
    }
    return b;
}

PairBondConfig sample_pair_bonds(const SpinConfig& cfg, RngStream& rng) {
    const Graph& g = cfg.graph();
    PairBondConfig b;
    b.open1.resize(g.edge_count());
    b.open2.resize(g.edge_count());
    for (int e = 0; e < g.edge_count(); ++e) {
        const Edge& ed = g.edges()[e];
        JointBondLaw law;
        try {
            law = pair_bond_law(cfg.weight(), Angle(cfg.theta(ed.u)), Angle(cfg.theta(ed.v)));
        } catch (const FeasibilityError& err) {
            throw FeasibilityError(err.p, err.q, err.c,
                                   "edge " + std::to_string(e) + " (" + std::to_string(ed.u) + "," +
                                       std::to_string(ed.v) + "), theta=(" +
                                       std::to_string(cfg.theta(ed.u)) + "," +
                                       std::to_string(cfg.theta(ed.v)) + ")");
        }
        double u = rng.uniform();
        // cells in fixed order: (1,1), (1,0), (0,1), (0,0)
        if (u < law.both_open()) {
            b.open1[e] = 1;
            b.open2[e] = 1;
        } else if (u < law.both_open() + law.only_1()) {
            b.open1[e] = 1;
        } else if (u < law.both_open() + law.only_1() + law.only_2()) {
            b.open2[e] = 1;
        }
    }
    return b;
}

bool bonds_consistent(const SpinConfig& cfg, const BondConfig& bonds, const ReflectionAxis& axis) {
    const Graph& g = cfg.graph();
    for (int e = 0; e < g.edge_count(); ++e) {
        if (!bonds.open[e]) continue;
        const Edge& ed = g.edges()[e];
        if (!axis.same_side(cfg.theta(ed.u), cfg.theta(ed.v))) return false;
    }
    return true;
}

bool apply_swap_map(SpinConfig& cfg, const BondConfig& bonds, int z, const ReflectionAxis& axis) {
    ClusterPartition part = components(cfg.graph(), bonds);
    if (connected_to_boundary(part, z)) return false;
    int lz = part.label[z];
    for (int v = 0; v < cfg.graph().vertex_count(); ++v)
        if (part.label[v] == lz) cfg.set_theta_unchecked(v, axis.reflect(cfg.theta(v)));
    return true;
}

double radon_nikodym_single(const SpinConfig& cfg, const BondConfig& bonds, int z,
                            const ReflectionAxis& axis, double perturb) {
    ClusterPartition part = components(cfg.graph(), bonds);
    if (connected_to_boundary(part, z)) return 1.0;
    int lz = part.label[z];
    const Graph& g = cfg.graph();
    const WeightFunction& w = cfg.weight();
    // log domain: for the matching bond law every per-edge term cancels
    // identically, log(1 - p) being exactly the log weight ratio
    double log_rn = 0.0;
    for (const Edge& ed : g.edges()) {
        bool u_in = part.label[ed.u] == lz;
        bool v_in = part.label[ed.v] == lz;
        if (u_in == v_in) continue;
        // orient so x is the cluster endpoint
        double thx = u_in ? cfg.theta(ed.u) : cfg.theta(ed.v);
        double thy = u_in ? cfg.theta(ed.v) : cfg.theta(ed.u);
        double rthx = axis.reflect(thx);
        double lw_old = w.log_eval_diff(thx - thy);
        double lw_new = w.log_eval_diff(rthx - thy);
        log_rn += lw_new - lw_old;
        // log(1 - p): for the unperturbed law this is the weight-ratio
        // exponent when the spins share a side, and 0 otherwise
        auto log_one_minus_p = [&](double a, double b, double lw_ratio) {
            if (!axis.same_side(a, b)) return 0.0;
            if (perturb == 1.0) return lw_ratio;
            return std::log1p(-perturb * (1.0 - std::exp(lw_ratio)));
        };
        log_rn += log_one_minus_p(rthx, thy, lw_old - lw_new);
        log_rn -= log_one_minus_p(thx, thy, lw_new - lw_old);
    }
    return std::exp(log_rn);
}

ClusterPartition pair_components(const Graph& g, const PairBondConfig& bonds, int family) {
    BondConfig b;
    b.open = family == 1 ? bonds.open1 : bonds.open2;
    return components(g, b);
}

bool apply_pair_swap_map(SpinConfig& cfg, const PairBondConfig& bonds, int z, int family) {
    ClusterPartition part = pair_components(cfg.graph(), bonds, family);
    if (connected_to_boundary(part, z)) return false;
    ReflectionAxis axis = family == 1 ? ReflectionAxis::diag1() : ReflectionAxis::diag2();
    int lz = part.label[z];
    for (int v = 0; v < cfg.graph().vertex_count(); ++v)
        if (part.label[v] == lz) cfg.set_theta_unchecked(v, axis.reflect(cfg.theta(v)));
    return true;
}

std::vector<CaseIdentity> pair_swap_case_identities(const WeightFunction& w, Angle ux, Angle uy) {
    PairBondArgs args = PairBondArgs::from_angles(ux, uy);
    JointBondLaw before = pair_bond_law(w, args);
    JointBondLaw after = pair_bond_law(w, args.reflected_r1());
    double wratio = w.eval_diff(args.dr1) / w.eval_diff(args.d0);

    std::vector<CaseIdentity> out;
    {
        CaseIdentity id;
        id.name = "b0";
        if (before.both_closed() > 1e-300) {
            id.residual = wratio * after.both_closed() / before.both_closed() - 1.0;
        } else {
            id.applicable = after.both_closed() <= 1e-300;
            id.residual = id.applicable ? 0.0 : 1e300;
        }
        out.push_back(id);
    }
    {
        CaseIdentity id;
        id.name = "b2";
        if (before.only_2() > 1e-14) {
            id.residual = wratio * after.only_2() / before.only_2() - 1.0;
        } else {
            // state (0,1) cannot occur on this edge; identity is vacuous
            // unless the image gives it positive mass
            id.applicable = false;
            id.residual = after.only_2() <= 1e-14 ? 0.0 : 1e300;
        }
        out.push_back(id);
    }
    return out;
}

} // namespace o2rc
