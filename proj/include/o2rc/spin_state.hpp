#pragma once

#include <vector>

#include "o2rc/graph.hpp"
#include "o2rc/rng.hpp"
#include "o2rc/weight.hpp"

namespace o2rc {

// Circle spin configuration over a graph. Boundary vertices are pinned (the
// default boundary condition is theta = 0) and never move under any update.
// A configuration is owned by exactly one chain at a time.
class SpinConfig {
public:
    // theta = boundary_angle everywhere, boundary pinned there
    SpinConfig(const Graph& g, WeightFunction w, double boundary_angle = 0.0);

    const Graph& graph() const { return *g_; }
    const WeightFunction& weight() const { return w_; }

    double theta(int v) const { return theta_[v]; }
    bool pinned(int v) const { return pinned_[v] != 0; }
    int unpinned_count() const { return static_cast<int>(unpinned_.size()); }
    const std::vector<int>& unpinned() const { return unpinned_; }

    // throws when v is pinned
    void set_theta(int v, double th);
    // bypasses the pin check; used by the swap maps which guarantee that
    // pinned spins are only ever "moved" to their own value
    void set_theta_unchecked(int v, double th) { theta_[v] = canonical_angle(th); }

    void randomize_unpinned(RngStream& rng);

private:
    const Graph* g_;
    WeightFunction w_;
    std::vector<double> theta_;
    std::vector<std::uint8_t> pinned_;
    std::vector<int> unpinned_;
};

enum class UpdateScheme { heat_bath, metropolis };

inline constexpr int kHeatBathTableNodes = 4096;

// Exact-conditional single-site update. The full conditional at x is
// proportional to prod_{y ~ x} w(theta - theta_y). XY uses rejection against
// a flat envelope scaled by the conditional maximum (one angle draw and one
// acceptance draw per attempt); Villain and rho weights use inverse-CDF
// sampling from a 4096-interval cumulative table built per update (one
// draw). Isolated vertices draw a uniform angle. Returns false (no-op) on a
// pinned vertex.
bool heat_bath_update(SpinConfig& cfg, int x, RngStream& rng);

// Random-walk Metropolis: proposal theta' = theta + Uniform(-w, w) mod 2pi.
// Consumes exactly two draws (proposal, acceptance). Returns acceptance;
// pinned vertices are a flagged no-op via the bool.
bool metropolis_update(SpinConfig& cfg, int x, double proposal_width, RngStream& rng);

// One update of every unpinned vertex in ascending index order.
void sweep(SpinConfig& cfg, UpdateScheme scheme, RngStream& rng, double proposal_width = 1.5);

// Snapshot serialization: run metadata then one "v,theta" line per vertex.
struct SnapshotMeta {
    std::uint64_t seed = 0;
    std::uint64_t sweeps = 0;
};
std::string snapshot_csv(const SpinConfig& cfg, const SnapshotMeta& meta);

} // namespace o2rc
