#include "o2rc/spin_state.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace o2rc {

SpinConfig::SpinConfig(const Graph& g, WeightFunction w, double boundary_angle)
    : g_(&g), w_(std::move(w)) {
    int n = g.vertex_count();
    theta_.assign(n, canonical_angle(boundary_angle));
    pinned_.assign(n, 0);
    for (int b : g.boundary()) pinned_[b] = 1;
    for (int v = 0; v < n; ++v)
        if (!pinned_[v]) unpinned_.push_back(v);
}

void SpinConfig::set_theta(int v, double th) {
    if (pinned_[v]) throw std::invalid_argument("cannot move a pinned spin");
    theta_[v] = canonical_angle(th);
}

void SpinConfig::randomize_unpinned(RngStream& rng) {
    for (int v : unpinned_) theta_[v] = rng.uniform() * kTwoPi;
}

namespace {

// log of the unnormalized full conditional at angle th
double conditional_log_density(const SpinConfig& cfg, int x, double th) {
    double s = 0.0;
    for (auto [y, e] : cfg.graph().neighbors(x)) {
        (void)e;
        s += cfg.weight().log_eval_diff(th - cfg.theta(y));
    }
    return s;
}

bool heat_bath_table(SpinConfig& cfg, int x, RngStream& rng) {
    const int n = kHeatBathTableNodes;
    static thread_local std::vector<double> logw, cdf;
    logw.assign(n + 1, 0.0);
    cdf.assign(n + 1, 0.0);

    double maxlog = -1e300;
    for (int i = 0; i <= n; ++i) {
        double th = kTwoPi * i / n;
        logw[i] = conditional_log_density(cfg, x, th);
        maxlog = std::max(maxlog, logw[i]);
    }
    // trapezoid cumulative of exp(logw - maxlog)
    double prev = std::exp(logw[0] - maxlog);
    for (int i = 1; i <= n; ++i) {
        double cur = std::exp(logw[i] - maxlog);
        cdf[i] = cdf[i - 1] + 0.5 * (prev + cur);
        prev = cur;
    }
    double total = cdf[n];
    if (!(total > 0.0)) { // fully degenerate conditional, keep the spin
        return true;
    }
    double target = rng.uniform() * total;
    auto it = std::upper_bound(cdf.begin(), cdf.end(), target);
    int i = static_cast<int>(it - cdf.begin());
    if (i < 1) i = 1;
    if (i > n) i = n;
    double seg = cdf[i] - cdf[i - 1];
    double frac = seg > 0.0 ? (target - cdf[i - 1]) / seg : 0.0;
    cfg.set_theta(x, kTwoPi * (i - 1 + frac) / n);
    return true;
}

bool heat_bath_von_mises(SpinConfig& cfg, int x, RngStream& rng) {
    // conditional ~ exp(beta R cos(theta - phi)) with R e^{i phi} = sum e^{i theta_y}
    double sx = 0.0, sy = 0.0;
    for (auto [y, e] : cfg.graph().neighbors(x)) {
        (void)e;
        sx += std::cos(cfg.theta(y));
        sy += std::sin(cfg.theta(y));
    }
    double r = std::hypot(sx, sy);
    if (r < 1e-14) {
        cfg.set_theta(x, rng.uniform() * kTwoPi);
        return true;
    }
    double phi = std::atan2(sy, sx);
    double kappa = cfg.weight().xy_beta() * r;
    for (;;) {
        double th = rng.uniform() * kTwoPi;
        double acc = std::exp(kappa * (std::cos(th - phi) - 1.0));
        if (rng.uniform() < acc) {
            cfg.set_theta(x, th);
            return true;
        }
    }
}

} // namespace

bool heat_bath_update(SpinConfig& cfg, int x, RngStream& rng) {
    if (cfg.pinned(x)) return false;
    if (cfg.graph().degree(x) == 0) {
        cfg.set_theta(x, rng.uniform() * kTwoPi);
        return true;
    }
    if (cfg.weight().kind() == WeightFunction::Kind::xy_exp)
        return heat_bath_von_mises(cfg, x, rng);
    return heat_bath_table(cfg, x, rng);
}

bool metropolis_update(SpinConfig& cfg, int x, double proposal_width, RngStream& rng) {
    if (cfg.pinned(x)) return false;
    double u1 = rng.uniform();
    double u2 = rng.uniform();
    double old_th = cfg.theta(x);
    double new_th = canonical_angle(old_th + (2.0 * u1 - 1.0) * proposal_width);
    double dlog = 0.0;
    for (auto [y, e] : cfg.graph().neighbors(x)) {
        (void)e;
        dlog += cfg.weight().log_eval_diff(new_th - cfg.theta(y)) -
                cfg.weight().log_eval_diff(old_th - cfg.theta(y));
    }
    if (dlog >= 0.0 || u2 < std::exp(dlog)) {
        cfg.set_theta(x, new_th);
        return true;
    }
    return false;
}

void sweep(SpinConfig& cfg, UpdateScheme scheme, RngStream& rng, double proposal_width) {
    for (int v : cfg.unpinned()) {
        if (scheme == UpdateScheme::heat_bath)
            heat_bath_update(cfg, v, rng);
        else
            metropolis_update(cfg, v, proposal_width, rng);
    }
}

std::string snapshot_csv(const SpinConfig& cfg, const SnapshotMeta& meta) {
    std::ostringstream os;
    os.precision(17);
    os << "# o2rc-snapshot seed=" << meta.seed << " sweeps=" << meta.sweeps << '\n';
    os << "vertex,theta\n";
    for (int v = 0; v < cfg.graph().vertex_count(); ++v)
        os << v << ',' << cfg.theta(v) << '\n';
    return os.str();
}

} // namespace o2rc
