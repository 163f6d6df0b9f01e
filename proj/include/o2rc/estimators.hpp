#pragma once

#include <vector>

#include "o2rc/bonds.hpp"
#include "o2rc/dynamics.hpp"

namespace o2rc {

double measure_cos_k(const SpinConfig& cfg, int x, int k);

// 1 iff x's cluster under the single-axis bonds touches the boundary.
int measure_connect_boundary(const SpinConfig& cfg, const BondConfig& bonds, int x);

// 1 iff x connects to the boundary in both bond families.
int measure_connect_both(const SpinConfig& cfg, const PairBondConfig& bonds, int x);

struct BatchStats {
    double mean = 0.0;
    double err = 0.0; // standard error from batch means
    int batches = 0;
};

// Error bars from batch means. Requires at least `batches` samples; trailing
// samples that do not fill a whole batch are dropped.
BatchStats batch_means(const std::vector<double>& values, int batches = 32);

struct RatioEstimate {
    double num_mean = 0.0, num_err = 0.0;
    double den_mean = 0.0, den_err = 0.0;
    double ratio = 0.0, ratio_err = 0.0;
    int batches = 0;
};

// Paired-batch ratio with a delta-method error. Throws UndefinedRatioError
// when the denominator mean is within 2 standard errors of zero.
RatioEstimate ratio_with_ci(const std::vector<double>& num, const std::vector<double>& den,
                            int batches = 32);

// Two-point connectivity on free/torus topologies: the bond axis is rotated
// by theta_y (axis through +-i e^{i theta_y}), bonds sampled fresh, then the
// x <-> y indicator. Throws on graphs with a boundary.
int two_point_connect(const SpinConfig& cfg, int x, int y, RngStream& rng);

} // namespace o2rc
