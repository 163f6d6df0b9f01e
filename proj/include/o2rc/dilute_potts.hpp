#pragma once

#include <vector>

#include "o2rc/graph.hpp"
#include "o2rc/rng.hpp"

namespace o2rc {

// Dilute Potts model generated by a continuous-time Markov chain on
// {0, 1, ..., Q}: state 0 is the vacancy, vacancies jump to each spin state
// at rate lambda, spin states jump to the vacancy at rate 1. Spins on a
// graph interact through the chain's transition density over the edge time
// parameter t; u is a vacancy fugacity.
struct DilutePottsParams {
    int Q = 2;
    double lambda = 1.0;
    double t = 1.0;
    double u = 1.0;

    void validate() const;
};

// mu(0) = 1/(1+Q lambda), mu(s) = lambda/(1+Q lambda); Q+1 entries.
std::vector<double> dp_invariant_measure(const DilutePottsParams& p);

// P_i(X_t = j), closed form (eigenvalues 0, -1, -(Q lambda + 1)).
double dp_transition_prob(int i, int j, const DilutePottsParams& p);

// Transition density w.r.t. mu: p_t(i, j) = P_i(X_t = j) / mu(j). Symmetric
// and strictly positive for t, lambda > 0.
double dp_transition_density(int i, int j, const DilutePottsParams& p);

// Spin configuration with 0 = vacancy. Boundary vertices, when the graph
// has any, are pinned to `boundary_spin`.
class DPConfig {
public:
    DPConfig(const Graph& g, int boundary_spin = 1);

    const Graph& graph() const { return *g_; }
    int spin(int v) const { return spins_[v]; }
    bool pinned(int v) const { return pinned_[v] != 0; }
    void set_spin(int v, int s);
    const std::vector<int>& spins() const { return spins_; }

private:
    const Graph* g_;
    std::vector<int> spins_;
    std::vector<std::uint8_t> pinned_;
};

// log of the unnormalized Gibbs weight
//   u^{N_0} prod_edges p_t(s_x, s_y) prod_x mu(s_x),
// accumulated in the log domain.
double dp_log_gibbs_weight(const DPConfig& cfg, const DilutePottsParams& p);

// Coupling-space parametrization on a regular graph: the Gibbs weight above
// equals exp(A + K * #{equal nonzero pairs} + V * #{pairs with a vacancy}
// + D * #{vacancy sites}) configuration-wise. Requires Q >= 2 (the map needs
// the distinct-spin edge weight) and a regular graph (the fugacity is split
// over edges by 1/deg).
struct KvdParams {
    double K = 0.0, V = 0.0, D = 0.0, A = 0.0;
};
KvdParams dp_kvd_parametrization(const DilutePottsParams& p, int degree, int n_edges);

// P(bond open | endpoint spins): zero unless the spins are equal and
// nonzero; then the probability that the edge bridge never visits the
// vacancy state, e^{-t} / P_s(X_t = s).
double dp_bond_open_prob(int si, int sj, const DilutePottsParams& p);

// lambda -> infinity limit: the usual Potts/FK coupling with
// beta = ln((1 + (Q-1) e^{-t}) / (1 - e^{-t})) and p = 1 - e^{-beta}.
struct FkLimit {
    double beta = 0.0;
    double p = 0.0;
};
FkLimit dp_fk_limit_params(double t, int Q);

// Single-site heat bath targeting the Gibbs measure; exact categorical draw
// over Q+1 states, one uniform per update. Sweep updates unpinned vertices
// in ascending index order.
bool dp_gibbs_update(DPConfig& cfg, int x, const DilutePottsParams& p, RngStream& rng);
void dp_gibbs_sweep(DPConfig& cfg, const DilutePottsParams& p, RngStream& rng);

// One Bernoulli(dp_bond_open_prob) per edge in edge order.
BondConfig dp_sample_bonds(const DPConfig& cfg, const DilutePottsParams& p, RngStream& rng);

struct TauSample {
    bool valid = false;     // sigma_x sigma_y != 0
    bool equal = false;     // sigma_x == sigma_y
    bool connected = false; // x <-> y in the bond clusters
};

struct TauEstimate {
    double tau = 0.0, tau_err = 0.0; // E[delta | valid] - 1/Q
    double rhs = 0.0, rhs_err = 0.0; // (1 - 1/Q) P(x <-> y | valid)
    int batches = 0;
};

// Batch-means estimate of both sides of the correlation/connectivity
// identity. Throws InsufficientDataError when no sample is valid.
TauEstimate dp_tau_estimator(const std::vector<TauSample>& samples, int Q, int batches = 32);

// Convenience driver: Gibbs chain plus per-measurement bond sampling.
std::vector<TauSample> run_dp_chain(DPConfig& cfg, const DilutePottsParams& p, int x, int y,
                                    int burn_in, int measurements, int sweeps_between,
                                    RngStream& rng);

} // namespace o2rc
