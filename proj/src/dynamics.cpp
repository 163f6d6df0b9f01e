#include "o2rc/dynamics.hpp"

#include <cmath>
#include <deque>
#include <stdexcept>

namespace o2rc {

ReflectionAxis cluster_swapping_step(SpinConfig& cfg, RngStream& rng) {
    double nu = rng.uniform() * kTwoPi;
    ReflectionAxis axis(nu + kPi / 2);
    BondConfig bonds = sample_bonds(cfg, axis, rng);
    ClusterPartition part = components(cfg.graph(), bonds);

    int n = cfg.graph().vertex_count();
    // flip coins in ascending cluster-label order
    std::vector<double> coin(n, -1.0);
    for (int v = 0; v < n; ++v)
        if (part.label[v] == v) coin[v] = rng.uniform();
    for (int v = 0; v < n; ++v) {
        int l = part.label[v];
        if (part.touches[l]) continue;
        if (coin[l] < 0.5)
            cfg.set_theta_unchecked(v, axis.reflect(cfg.theta(v)));
    }
    return axis;
}

int wolff_step(SpinConfig& cfg, RngStream& rng) {
    const Graph& g = cfg.graph();
    if (cfg.unpinned_count() == 0) return 0;
    int seed = cfg.unpinned()[rng.uniform_int(cfg.unpinned_count())];
    ReflectionAxis axis(rng.uniform() * kTwoPi);

    std::vector<std::uint8_t> in_cluster(g.vertex_count(), 0);
    std::vector<std::uint8_t> examined(g.edge_count(), 0);
    std::vector<int> members;
    std::deque<int> frontier;
    in_cluster[seed] = 1;
    members.push_back(seed);
    frontier.push_back(seed);
    bool touches = g.is_boundary(seed);

    while (!frontier.empty()) {
        int x = frontier.front();
        frontier.pop_front();
        for (auto [y, e] : g.neighbors(x)) {
            if (examined[e] || in_cluster[y]) continue;
            examined[e] = 1;
            double u = rng.uniform();
            double p = single_bond_prob(cfg.weight(), Angle(cfg.theta(x)), Angle(cfg.theta(y)), axis);
            if (u < p) {
                in_cluster[y] = 1;
                members.push_back(y);
                frontier.push_back(y);
                if (g.is_boundary(y)) touches = true;
            }
        }
    }

    if (!touches)
        for (int v : members) cfg.set_theta_unchecked(v, axis.reflect(cfg.theta(v)));
    return static_cast<int>(members.size());
}

void dynamics_step(SpinConfig& cfg, const DynamicsConfig& dyn, RngStream& rng) {
    switch (dyn.scheme) {
    case Scheme::metropolis:
        sweep(cfg, UpdateScheme::metropolis, rng, dyn.metropolis_width);
        break;
    case Scheme::heat_bath:
        sweep(cfg, UpdateScheme::heat_bath, rng);
        break;
    case Scheme::cluster_swapping:
        cluster_swapping_step(cfg, rng);
        if (dyn.interleave_heat_bath) sweep(cfg, UpdateScheme::heat_bath, rng);
        break;
    case Scheme::wolff:
        wolff_step(cfg, rng);
        if (dyn.interleave_heat_bath) sweep(cfg, UpdateScheme::heat_bath, rng);
        break;
    }
}

std::map<std::string, ObservableSeries> run_chain(SpinConfig& cfg, const DynamicsConfig& dyn,
                                                  const MeasurementPlan& plan, int measurements,
                                                  RngStream& rng) {
    if (measurements <= 0) throw std::invalid_argument("measurement count must be positive");
    if (dyn.burn_in < 0 || dyn.sweeps_between_measurements <= 0)
        throw std::invalid_argument("dynamics counts must be positive");
    if (plan.site < 0 || plan.site >= cfg.graph().vertex_count())
        throw std::invalid_argument("measurement site out of range");

    bool with_conn = plan.connectivity && !cfg.graph().boundary().empty();
    bool with_pair = plan.pair_connectivity && !cfg.graph().boundary().empty();

    std::map<std::string, ObservableSeries> out;
    auto series = [&](const std::string& name) -> ObservableSeries& {
        auto& s = out[name];
        s.name = name;
        s.values.reserve(measurements);
        return s;
    };
    ObservableSeries& cos1 = series("cos1");
    ObservableSeries& cos2 = series("cos2");
    ObservableSeries* conn = with_conn ? &series("conn") : nullptr;
    ObservableSeries* zm1 = with_conn ? &series("zm1") : nullptr;
    ObservableSeries* both = with_pair ? &series("conn_both") : nullptr;
    ObservableSeries* zm2 = with_pair ? &series("zm2") : nullptr;

    for (int i = 0; i < dyn.burn_in; ++i) dynamics_step(cfg, dyn, rng);

    for (int m = 0; m < measurements; ++m) {
        for (int i = 0; i < dyn.sweeps_between_measurements; ++i) dynamics_step(cfg, dyn, rng);

        double c1 = std::cos(cfg.theta(plan.site));
        double c2 = std::cos(2.0 * cfg.theta(plan.site));
        cos1.values.push_back(c1);
        cos2.values.push_back(c2);

        if (with_conn) {
            BondConfig bonds = sample_bonds(cfg, ReflectionAxis::imaginary(), rng);
            ClusterPartition part = components(cfg.graph(), bonds);
            double ind = connected_to_boundary(part, plan.site) ? 1.0 : 0.0;
            conn->values.push_back(ind);
            zm1->values.push_back(c1 * (1.0 - ind));
        }
        if (with_pair) {
            PairBondConfig pb = sample_pair_bonds(cfg, rng);
            ClusterPartition p1 = pair_components(cfg.graph(), pb, 1);
            ClusterPartition p2 = pair_components(cfg.graph(), pb, 2);
            double ind = (connected_to_boundary(p1, plan.site) &&
                          connected_to_boundary(p2, plan.site)) ? 1.0 : 0.0;
            both->values.push_back(ind);
            zm2->values.push_back(c2 * (1.0 - ind));
        }
    }
    return out;
}

} // namespace o2rc
