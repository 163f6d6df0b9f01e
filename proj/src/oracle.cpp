#include "o2rc/oracle.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "o2rc/bonds.hpp"
#include "o2rc/errors.hpp"

namespace o2rc {

namespace {

std::vector<int> unpinned_vertices(const Graph& g) {
    std::vector<int> out;
    for (int v = 0; v < g.vertex_count(); ++v)
        if (!g.is_boundary(v)) out.push_back(v);
    return out;
}

// Gauss-Legendre nodes and weights on [-1, 1] via Newton iteration on the
// Legendre recurrence.
void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w) {
    x.assign(n, 0.0);
    w.assign(n, 0.0);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double z = std::cos(kPi * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < n; ++j) {
                double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
            }
            pp = n * (z * p0 - p1) / (z * z - 1.0);
            double dz = p0 / pp;
            z -= dz;
            if (std::fabs(dz) < 1e-15) break;
        }
        x[i] = -z;
        x[n - 1 - i] = z;
        w[i] = w[n - 1 - i] = 2.0 / ((1.0 - z * z) * pp * pp);
    }
}

// Angle quadrature over [0, 2pi): Gauss-Legendre within each of the eight
// arcs bounded by the multiples of pi/4. The bond-law integrands are smooth
// inside each arc but kink where a spin crosses a reflection axis or a
// quadrant boundary, so a plain periodic trapezoid rule would lose its
// accuracy there.
void angle_quadrature(int m, std::vector<double>& node, std::vector<double>& weight) {
    const int arcs = 8;
    if (m < arcs || m % arcs != 0)
        throw std::invalid_argument("oracle grid must be a multiple of 8");
    int per_arc = m / arcs;
    std::vector<double> gx, gw;
    gauss_legendre(per_arc, gx, gw);
    node.clear();
    weight.clear();
    node.reserve(m);
    weight.reserve(m);
    for (int k = 0; k < arcs; ++k) {
        double a = kTwoPi * k / arcs, b = kTwoPi * (k + 1) / arcs;
        for (int i = 0; i < per_arc; ++i) {
            node.push_back(0.5 * (b - a) * gx[i] + 0.5 * (a + b));
            weight.push_back(0.5 * (b - a) * gw[i]);
        }
    }
}

// P(site touches boundary) for independent per-edge open probabilities,
// by enumeration of the 2^E outcomes.
double connect_prob(const Graph& g, const std::vector<double>& pe, int site) {
    int ne = g.edge_count();
    double total = 0.0;
    for (std::uint32_t mask = 0; mask < (1u << ne); ++mask) {
        double pr = 1.0;
        for (int e = 0; e < ne; ++e) pr *= (mask >> e) & 1u ? pe[e] : 1.0 - pe[e];
        if (pr == 0.0) continue;
        UnionFind uf(g.vertex_count() + 1); // extra node = boundary
        int super = g.vertex_count();
        for (int b : g.boundary()) uf.unite(super, b);
        for (int e = 0; e < ne; ++e)
            if ((mask >> e) & 1u) uf.unite(g.edges()[e].u, g.edges()[e].v);
        if (uf.find(site) == uf.find(super)) total += pr;
    }
    return total;
}

// P(site touches boundary in both families) with the per-edge four-cell
// joint laws, over the 4^E outcomes.
double connect_both_prob(const Graph& g, const std::vector<JointBondLaw>& laws, int site) {
    int ne = g.edge_count();
    double total = 0.0;
    std::uint64_t n_outcomes = 1;
    for (int e = 0; e < ne; ++e) n_outcomes *= 4;
    for (std::uint64_t code = 0; code < n_outcomes; ++code) {
        double pr = 1.0;
        std::uint64_t rem = code;
        UnionFind uf1(g.vertex_count() + 1), uf2(g.vertex_count() + 1);
        int super = g.vertex_count();
        for (int b : g.boundary()) {
            uf1.unite(super, b);
            uf2.unite(super, b);
        }
        for (int e = 0; e < ne && pr > 0.0; ++e) {
            int cell = rem & 3u;
            rem >>= 2;
            const JointBondLaw& law = laws[e];
            switch (cell) {
            case 0: pr *= law.both_closed(); break;
            case 1:
                pr *= law.only_1();
                uf1.unite(g.edges()[e].u, g.edges()[e].v);
                break;
            case 2:
                pr *= law.only_2();
                uf2.unite(g.edges()[e].u, g.edges()[e].v);
                break;
            case 3:
                pr *= law.both_open();
                uf1.unite(g.edges()[e].u, g.edges()[e].v);
                uf2.unite(g.edges()[e].u, g.edges()[e].v);
                break;
            }
        }
        if (pr == 0.0) continue;
        if (uf1.find(site) == uf1.find(super) && uf2.find(site) == uf2.find(super)) total += pr;
    }
    return total;
}

} // namespace

double exact_o2_expectation_at(const OracleSpec& spec, O2Observable obs, int site, int grid) {
    const Graph& g = *spec.g;
    std::vector<int> free_v = unpinned_vertices(g);
    int k = static_cast<int>(free_v.size());
    int ne = g.edge_count();

    bool needs_bonds = obs == O2Observable::connect || obs == O2Observable::cos1_not_connect;
    bool needs_pairs = obs == O2Observable::connect_both || obs == O2Observable::cos2_not_both;
    double bond_factor = needs_bonds ? std::pow(2.0, ne) : needs_pairs ? std::pow(4.0, ne) : 1.0;
    if (std::pow(static_cast<double>(grid), k) * bond_factor > spec.budget)
        throw BudgetError("oracle state space exceeds budget");
    if ((needs_bonds || needs_pairs) && g.boundary().empty())
        throw std::invalid_argument("connectivity oracle needs a boundary");

    std::vector<double> theta(g.vertex_count(), canonical_angle(spec.boundary_angle));
    std::vector<double> node, qweight;
    angle_quadrature(grid, node, qweight);

    double num = 0.0, den = 0.0;
    std::vector<double> pe(ne);
    std::vector<JointBondLaw> laws(ne);

    std::uint64_t total = 1;
    for (int i = 0; i < k; ++i) total *= grid;
    for (std::uint64_t it = 0; it < total; ++it) {
        std::uint64_t rem = it;
        double qw = 1.0;
        for (int i = 0; i < k; ++i) {
            int idx = static_cast<int>(rem % grid);
            theta[free_v[i]] = node[idx];
            qw *= qweight[idx];
            rem /= grid;
        }
        double lw = 0.0;
        for (const Edge& e : g.edges())
            lw += spec.w.log_eval_diff(theta[e.u] - theta[e.v]);
        double wgt = qw * std::exp(lw);
        den += wgt;

        double val = 0.0;
        switch (obs) {
        case O2Observable::cos1:
            val = std::cos(theta[site]);
            break;
        case O2Observable::cos2:
            val = std::cos(2.0 * theta[site]);
            break;
        case O2Observable::connect:
        case O2Observable::cos1_not_connect: {
            for (int e = 0; e < ne; ++e)
                pe[e] = single_bond_prob(spec.w, Angle(theta[g.edges()[e].u]),
                                         Angle(theta[g.edges()[e].v]), ReflectionAxis::imaginary());
            double pc = connect_prob(g, pe, site);
            val = obs == O2Observable::connect ? pc : std::cos(theta[site]) * (1.0 - pc);
            break;
        }
        case O2Observable::connect_both:
        case O2Observable::cos2_not_both: {
            for (int e = 0; e < ne; ++e)
                laws[e] = pair_bond_law(spec.w, Angle(theta[g.edges()[e].u]),
                                        Angle(theta[g.edges()[e].v]));
            double pc = connect_both_prob(g, laws, site);
            val = obs == O2Observable::connect_both ? pc : std::cos(2.0 * theta[site]) * (1.0 - pc);
            break;
        }
        }
        num += val * wgt;
    }
    return num / den;
}

OracleResult exact_o2_expectation(const OracleSpec& spec, O2Observable obs, int site) {
    double coarse = exact_o2_expectation_at(spec, obs, site, spec.grid);
    double fine = exact_o2_expectation_at(spec, obs, site, 2 * spec.grid);
    OracleResult r;
    r.value = fine;
    r.error = std::fabs(fine - coarse);
    return r;
}

double exact_dp_expectation(const DPOracleSpec& spec,
                            const std::function<double(const std::vector<int>&)>& f) {
    const Graph& g = *spec.g;
    const DilutePottsParams& p = spec.params;
    p.validate();
    std::vector<int> free_v = unpinned_vertices(g);
    int k = static_cast<int>(free_v.size());
    int states = p.Q + 1;
    double work = std::pow(static_cast<double>(states), k);
    if (work > spec.budget) throw BudgetError("oracle state space exceeds budget");

    std::vector<double> mu = dp_invariant_measure(p);
    std::vector<int> spins(g.vertex_count(), spec.boundary_spin);

    std::uint64_t total = 1;
    for (int i = 0; i < k; ++i) total *= states;

    auto log_weight = [&]() {
        double lw = 0.0;
        for (int v = 0; v < g.vertex_count(); ++v) {
            lw += std::log(mu[spins[v]]);
            if (spins[v] == 0) lw += std::log(p.u);
        }
        for (const Edge& e : g.edges())
            lw += std::log(dp_transition_density(spins[e.u], spins[e.v], p));
        return lw;
    };

    // two passes: max log weight, then stabilized sums
    double maxlw = -1e300;
    for (std::uint64_t it = 0; it < total; ++it) {
        std::uint64_t rem = it;
        for (int i = 0; i < k; ++i) {
            spins[free_v[i]] = static_cast<int>(rem % states);
            rem /= states;
        }
        maxlw = std::max(maxlw, log_weight());
    }
    double num = 0.0, den = 0.0;
    for (std::uint64_t it = 0; it < total; ++it) {
        std::uint64_t rem = it;
        for (int i = 0; i < k; ++i) {
            spins[free_v[i]] = static_cast<int>(rem % states);
            rem /= states;
        }
        double wgt = std::exp(log_weight() - maxlw);
        den += wgt;
        num += f(spins) * wgt;
    }
    return num / den;
}

DPTauExact dp_tau_exact(const DPOracleSpec& spec, int x, int y) {
    const Graph& g = *spec.g;
    const DilutePottsParams& p = spec.params;
    int ne = g.edge_count();
    if (std::pow(static_cast<double>(p.Q + 1), unpinned_vertices(g).size()) * std::pow(2.0, ne) >
        spec.budget)
        throw BudgetError("oracle state space exceeds budget");

    auto valid = [&](const std::vector<int>& s) { return s[x] != 0 && s[y] != 0 ? 1.0 : 0.0; };
    auto eq_valid = [&](const std::vector<int>& s) {
        return s[x] != 0 && s[x] == s[y] ? 1.0 : 0.0;
    };
    auto conn_valid = [&](const std::vector<int>& s) -> double {
        if (s[x] == 0 || s[y] == 0) return 0.0;
        std::vector<double> pe(ne);
        for (int e = 0; e < ne; ++e)
            pe[e] = dp_bond_open_prob(s[g.edges()[e].u], s[g.edges()[e].v], p);
        // P(x <-> y) over bond outcomes
        double total = 0.0;
        for (std::uint32_t mask = 0; mask < (1u << ne); ++mask) {
            double pr = 1.0;
            for (int e = 0; e < ne; ++e) pr *= (mask >> e) & 1u ? pe[e] : 1.0 - pe[e];
            if (pr == 0.0) continue;
            UnionFind uf(g.vertex_count());
            for (int e = 0; e < ne; ++e)
                if ((mask >> e) & 1u) uf.unite(g.edges()[e].u, g.edges()[e].v);
            if (uf.find(x) == uf.find(y)) total += pr;
        }
        return total;
    };

    double ev = exact_dp_expectation(spec, valid);
    if (ev <= 0.0) throw InsufficientDataError("P(sigma_x sigma_y != 0) vanishes");
    double ee = exact_dp_expectation(spec, eq_valid);
    double ec = exact_dp_expectation(spec, conn_valid);
    DPTauExact r;
    r.lhs = ee / ev - 1.0 / p.Q;
    r.rhs = (1.0 - 1.0 / p.Q) * ec / ev;
    return r;
}

} // namespace o2rc
