#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "o2rc/dynamics.hpp"
#include "o2rc/weight.hpp"

namespace o2rc {

// Experiment configuration: a flat "key = value" text format ('#' comments).
// Unknown keys are rejected; parse -> serialize -> parse is the identity.
struct ExperimentConfig {
    std::string model = "villain"; // villain | xy | rho | dilute_potts
    int dim = 2;
    int side = 8;
    std::string bc = "wired"; // wired | free | torus
    std::vector<double> t_grid = {1.0};
    double beta = 1.0;              // xy / rho weight parameter
    std::string dynamics = "cluster"; // metropolis | heat_bath | cluster | wolff
    bool interleave = true;
    int burn_in = 200;
    int measurements = 10000;
    int sweeps_between = 1;
    int chains = 1;
    int workers = 1; // 0 = hardware concurrency
    std::uint64_t seed = 1;
    std::string site = "center"; // "center" or a vertex index
    bool villain_table = true;
    double metropolis_width = 1.5;
    int dp_q = 2;
    double dp_lambda = 1.0;
    double dp_u = 1.0;

    static ExperimentConfig parse(const std::string& text);
    std::string serialize() const;

    // throws ConfigError on invalid combinations
    void validate() const;

    // resolved helpers
    Graph make_graph(double t) const;
    WeightFunction make_weight(double t) const;
    Scheme scheme() const;
    int resolve_site(const Graph& g) const;
};

} // namespace o2rc
