#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "o2rc/bonds.hpp"
#include "o2rc/spin_state.hpp"

namespace o2rc {

// Markov chain dynamics for the circle spin models.
//
// One cluster-swapping step:
//   1. draw nu uniform on [0, 2pi)
//   2. sample bonds for the reflection axis through +-e^{i(nu + pi/2)}
//      (this reproduces the g_t bond probabilities: an edge can open only
//      when both spins lie strictly on one side of that axis)
//   3. every cluster not touching the boundary is reflected, theta ->
//      2 nu + pi - theta, with probability 1/2
//
// RNG consumption per step: 1 draw for nu, one per edge in edge order, one
// per cluster in ascending cluster-label order (drawn for boundary clusters
// too, then ignored).
//
// Equivalent reading of one step: the bonds record which neighbor pairs kept
// a common side relative to the drawn axis, and the step resamples, for each
// free cluster, the binary choice between the configuration and its axis
// reflection while everything transverse to the axis is held fixed.
//
// Pure cluster swapping is measure preserving but is not advertised as
// ergodic; the default dynamics interleaves one heat-bath sweep per cluster
// or Wolff step.

enum class Scheme { metropolis, heat_bath, cluster_swapping, wolff };

struct DynamicsConfig {
    Scheme scheme = Scheme::cluster_swapping;
    int sweeps_between_measurements = 1;
    int burn_in = 0;
    bool interleave_heat_bath = true; // cluster_swapping / wolff only
    double metropolis_width = 1.5;
};

// Returns the axis used, for tests of the side-pattern invariant.
ReflectionAxis cluster_swapping_step(SpinConfig& cfg, RngStream& rng);

// Wolff-style single-cluster update: uniform unpinned seed, uniform
// reflection axis, cluster grown edge by edge with the single-bond law
// (one draw per edge examined toward a vertex not yet in the cluster),
// whole cluster reflected unless it touches the boundary.
// Returns the cluster size (0 when the graph has no unpinned vertex).
int wolff_step(SpinConfig& cfg, RngStream& rng);

void dynamics_step(SpinConfig& cfg, const DynamicsConfig& dyn, RngStream& rng);

struct RunMetadata {
    std::uint64_t seed = 0;
    std::uint64_t stream = 0;
    std::string dynamics;
    std::string graph;
    int measurements = 0;
};

struct ObservableSeries {
    std::string name;
    std::vector<double> values;
    RunMetadata meta;
};

// What to record at each measurement. Bonds are resampled fresh from the
// current spins at every measurement (single-axis family first, then the
// pair family), so all observables share one spin snapshot.
struct MeasurementPlan {
    int site = 0;
    bool connectivity = true;      // needs a boundary
    bool pair_connectivity = true; // needs a boundary
};

// Burn-in, then alternately advance the chain and measure. Series produced:
// cos1, cos2, and when requested conn, conn_both, zm1 = cos1 * (1 - conn),
// zm2 = cos2 * (1 - conn_both).
std::map<std::string, ObservableSeries> run_chain(SpinConfig& cfg, const DynamicsConfig& dyn,
                                                  const MeasurementPlan& plan, int measurements,
                                                  RngStream& rng);

} // namespace o2rc
