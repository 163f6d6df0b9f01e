#pragma once

#include <string>

#include "o2rc/config.hpp"

namespace o2rc {

// Runs the configured experiment and writes result files under out_dir:
//   series_t<i>.csv    chain,index,observable,value  (17 significant digits)
//   snapshot_t<i>.csv  final state of chain 0
//   summary.json       estimates, errors, ratios per temperature
// Outputs are byte-identical for a fixed (config, seed) regardless of the
// worker count: chains own independent RNG streams and results are merged
// in chain order. Returns the summary JSON text.
std::string run_simulate(const ExperimentConfig& cfg, const std::string& out_dir);

// Temperature scan; writes sweep.csv (one row per t) and returns its path.
std::string run_sweep(const ExperimentConfig& cfg, const std::string& out_dir);

// Shipped oracle cases as a JSON manifest (case id -> value, error bound).
std::string oracle_manifest_json();

} // namespace o2rc
