#include "o2rc/dilute_potts.hpp"

#include <cmath>
#include <stdexcept>

#include "o2rc/errors.hpp"
#include "o2rc/estimators.hpp"

namespace o2rc {

void DilutePottsParams::validate() const {
    if (Q < 1) throw std::invalid_argument("dilute Potts needs Q >= 1");
    if (!(lambda > 0.0) || !(t > 0.0) || !(u > 0.0))
        throw std::invalid_argument("dilute Potts needs lambda, t, u > 0");
}

std::vector<double> dp_invariant_measure(const DilutePottsParams& p) {
    p.validate();
    std::vector<double> mu(p.Q + 1, p.lambda / (1.0 + p.Q * p.lambda));
    mu[0] = 1.0 / (1.0 + p.Q * p.lambda);
    return mu;
}

namespace {

void check_state(int s, int Q) {
    if (s < 0 || s > Q) throw std::invalid_argument("spin state out of range");
}

} // namespace

double dp_transition_prob(int i, int j, const DilutePottsParams& p) {
    p.validate();
    check_state(i, p.Q);
    check_state(j, p.Q);
    double Q = p.Q, lam = p.lambda;
    double e1 = std::exp(-(Q * lam + 1.0) * p.t);
    double e2 = std::exp(-p.t);
    double denom = 1.0 + Q * lam;
    if (i == 0 && j == 0) return (1.0 + Q * lam * e1) / denom;
    if (i == 0) return lam * (1.0 - e1) / denom;
    if (j == 0) return (1.0 - e1) / denom;
    if (i == j) return e1 / (Q * denom) + (Q - 1.0) / Q * e2 + lam / denom;
    return e1 / (Q * denom) - e2 / Q + lam / denom;
}

double dp_transition_density(int i, int j, const DilutePottsParams& p) {
    p.validate();
    check_state(i, p.Q);
    check_state(j, p.Q);
    double Q = p.Q, lam = p.lambda;
    double e1 = std::exp(-(Q * lam + 1.0) * p.t);
    double e2 = std::exp(-p.t);
    if (i == 0 && j == 0) return 1.0 + Q * lam * e1;
    if (i == 0 || j == 0) return 1.0 - e1;
    if (i == j) return 1.0 + e1 / (Q * lam) + (1.0 + lam * Q) / lam * (Q - 1.0) / Q * e2;
    return 1.0 + e1 / (Q * lam) - (1.0 + lam * Q) / lam / Q * e2;
}

DPConfig::DPConfig(const Graph& g, int boundary_spin) : g_(&g) {
    spins_.assign(g.vertex_count(), boundary_spin);
    pinned_.assign(g.vertex_count(), 0);
    for (int b : g.boundary()) pinned_[b] = 1;
}

void DPConfig::set_spin(int v, int s) {
    if (pinned_[v]) throw std::invalid_argument("cannot move a pinned spin");
    spins_[v] = s;
}

double dp_log_gibbs_weight(const DPConfig& cfg, const DilutePottsParams& p) {
    p.validate();
    std::vector<double> mu = dp_invariant_measure(p);
    double lw = 0.0;
    for (int v = 0; v < cfg.graph().vertex_count(); ++v) {
        int s = cfg.spin(v);
        check_state(s, p.Q);
        lw += std::log(mu[s]);
        if (s == 0) lw += std::log(p.u);
    }
    for (const Edge& e : cfg.graph().edges())
        lw += std::log(dp_transition_density(cfg.spin(e.u), cfg.spin(e.v), p));
    return lw;
}

KvdParams dp_kvd_parametrization(const DilutePottsParams& p, int degree, int n_edges) {
    p.validate();
    if (p.Q < 2) throw std::invalid_argument("coupling parametrization needs Q >= 2");
    if (degree < 1 || n_edges < 1) throw std::invalid_argument("need a regular graph");
    std::vector<double> mu = dp_invariant_measure(p);
    double pss = dp_transition_density(1, 1, p);
    double psd = dp_transition_density(1, 2, p);
    double ps0 = dp_transition_density(1, 0, p);
    double p00 = dp_transition_density(0, 0, p);
    KvdParams k;
    k.K = std::log(pss / psd);
    k.V = std::log(ps0 * ps0 / (psd * p00));
    k.D = degree * std::log(p00 / ps0) + std::log(p.u * mu[0] / mu[1]);
    k.A = n_edges * (std::log(psd) + 2.0 / degree * std::log(mu[1]));
    return k;
}

double dp_bond_open_prob(int si, int sj, const DilutePottsParams& p) {
    p.validate();
    check_state(si, p.Q);
    check_state(sj, p.Q);
    if (si != sj || si == 0) return 0.0;
    return std::exp(-p.t) / dp_transition_prob(si, si, p);
}

FkLimit dp_fk_limit_params(double t, int Q) {
    if (!(t > 0.0) || Q < 1) throw std::invalid_argument("fk limit needs t > 0, Q >= 1");
    double et = std::exp(-t);
    FkLimit f;
    f.beta = std::log((1.0 + (Q - 1.0) * et) / (1.0 - et));
    f.p = Q * et / (1.0 + (Q - 1.0) * et);
    return f;
}

bool dp_gibbs_update(DPConfig& cfg, int x, const DilutePottsParams& p, RngStream& rng) {
    if (cfg.pinned(x)) return false;
    std::vector<double> mu = dp_invariant_measure(p);
    std::vector<double> lw(p.Q + 1, 0.0);
    double maxl = -1e300;
    for (int s = 0; s <= p.Q; ++s) {
        double l = std::log(mu[s]) + (s == 0 ? std::log(p.u) : 0.0);
        for (auto [y, e] : cfg.graph().neighbors(x)) {
            (void)e;
            l += std::log(dp_transition_density(s, cfg.spin(y), p));
        }
        lw[s] = l;
        if (l > maxl) maxl = l;
    }
    double total = 0.0;
    for (int s = 0; s <= p.Q; ++s) {
        lw[s] = std::exp(lw[s] - maxl);
        total += lw[s];
    }
    double target = rng.uniform() * total;
    double acc = 0.0;
    int chosen = p.Q;
    for (int s = 0; s <= p.Q; ++s) {
        acc += lw[s];
        if (target < acc) {
            chosen = s;
            break;
        }
    }
    cfg.set_spin(x, chosen);
    return true;
}

void dp_gibbs_sweep(DPConfig& cfg, const DilutePottsParams& p, RngStream& rng) {
    for (int v = 0; v < cfg.graph().vertex_count(); ++v)
        if (!cfg.pinned(v)) dp_gibbs_update(cfg, v, p, rng);
}

BondConfig dp_sample_bonds(const DPConfig& cfg, const DilutePottsParams& p, RngStream& rng) {
    BondConfig b;
    b.open.resize(cfg.graph().edge_count());
    for (int e = 0; e < cfg.graph().edge_count(); ++e) {
        const Edge& ed = cfg.graph().edges()[e];
        double u = rng.uniform();
        b.open[e] = u < dp_bond_open_prob(cfg.spin(ed.u), cfg.spin(ed.v), p);
    }
    return b;
}

TauEstimate dp_tau_estimator(const std::vector<TauSample>& samples, int Q, int batches) {
    std::vector<double> valid, eq_valid, conn_valid;
    valid.reserve(samples.size());
    eq_valid.reserve(samples.size());
    conn_valid.reserve(samples.size());
    int n_valid = 0;
    for (const TauSample& s : samples) {
        valid.push_back(s.valid ? 1.0 : 0.0);
        eq_valid.push_back(s.valid && s.equal ? 1.0 : 0.0);
        conn_valid.push_back(s.valid && s.connected ? 1.0 : 0.0);
        if (s.valid) ++n_valid;
    }
    if (n_valid == 0)
        throw InsufficientDataError("no sample with both probed spins nonzero");

    RatioEstimate re = ratio_with_ci(eq_valid, valid, batches);
    RatioEstimate rc = ratio_with_ci(conn_valid, valid, batches);
    TauEstimate t;
    t.tau = re.ratio - 1.0 / Q;
    t.tau_err = re.ratio_err;
    t.rhs = (1.0 - 1.0 / Q) * rc.ratio;
    t.rhs_err = (1.0 - 1.0 / Q) * rc.ratio_err;
    t.batches = batches;
    return t;
}

std::vector<TauSample> run_dp_chain(DPConfig& cfg, const DilutePottsParams& p, int x, int y,
                                    int burn_in, int measurements, int sweeps_between,
                                    RngStream& rng) {
    for (int i = 0; i < burn_in; ++i) dp_gibbs_sweep(cfg, p, rng);
    std::vector<TauSample> out;
    out.reserve(measurements);
    for (int m = 0; m < measurements; ++m) {
        for (int i = 0; i < sweeps_between; ++i) dp_gibbs_sweep(cfg, p, rng);
        TauSample s;
        s.valid = cfg.spin(x) != 0 && cfg.spin(y) != 0;
        s.equal = cfg.spin(x) == cfg.spin(y);
        BondConfig bonds = dp_sample_bonds(cfg, p, rng);
        ClusterPartition part = components(cfg.graph(), bonds);
        s.connected = part.label[x] == part.label[y];
        out.push_back(s);
    }
    return out;
}

} // namespace o2rc
