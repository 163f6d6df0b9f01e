#include "o2rc/estimators.hpp"

#include <cmath>
#include <stdexcept>

#include "o2rc/errors.hpp"

namespace o2rc {

double measure_cos_k(const SpinConfig& cfg, int x, int k) {
    return std::cos(k * cfg.theta(x));
}

int measure_connect_boundary(const SpinConfig& cfg, const BondConfig& bonds, int x) {
    ClusterPartition part = components(cfg.graph(), bonds);
    return connected_to_boundary(part, x) ? 1 : 0;
}

int measure_connect_both(const SpinConfig& cfg, const PairBondConfig& bonds, int x) {
    ClusterPartition p1 = pair_components(cfg.graph(), bonds, 1);
    ClusterPartition p2 = pair_components(cfg.graph(), bonds, 2);
    return (connected_to_boundary(p1, x) && connected_to_boundary(p2, x)) ? 1 : 0;
}

BatchStats batch_means(const std::vector<double>& values, int batches) {
    if (batches < 2) throw std::invalid_argument("need at least 2 batches");
    int n = static_cast<int>(values.size());
    if (n < batches) throw std::invalid_argument("fewer samples than batches");
    for (double v : values)
        if (!std::isfinite(v)) throw std::invalid_argument("non-finite value in series");
    int bs = n / batches;
    BatchStats s;
    s.batches = batches;
    std::vector<double> bm(batches, 0.0);
    for (int b = 0; b < batches; ++b) {
        double acc = 0.0;
        for (int i = b * bs; i < (b + 1) * bs; ++i) acc += values[i];
        bm[b] = acc / bs;
    }
    double mean = 0.0;
    for (double v : bm) mean += v;
    mean /= batches;
    double var = 0.0;
    for (double v : bm) var += (v - mean) * (v - mean);
    var /= (batches - 1);
    s.mean = mean;
    s.err = std::sqrt(var / batches);
    return s;
}

RatioEstimate ratio_with_ci(const std::vector<double>& num, const std::vector<double>& den,
                            int batches) {
    if (num.size() != den.size()) throw std::invalid_argument("paired series must have equal length");
    if (batches < 16) throw std::invalid_argument("ratio errors need at least 16 batches");
    BatchStats ns = batch_means(num, batches);
    BatchStats ds = batch_means(den, batches);
    if (std::fabs(ds.mean) <= 2.0 * ds.err)
        throw UndefinedRatioError("ratio denominator consistent with zero");

    RatioEstimate r;
    r.num_mean = ns.mean;
    r.num_err = ns.err;
    r.den_mean = ds.mean;
    r.den_err = ds.err;
    r.batches = batches;
    r.ratio = ns.mean / ds.mean;

    // delta method on paired batch means: var(r) ~ mean of ((a_i - r b_i)/den)^2 / (B-1) / B
    int n = static_cast<int>(num.size());
    int bs = n / batches;
    double acc = 0.0;
    for (int b = 0; b < batches; ++b) {
        double a = 0.0, d = 0.0;
        for (int i = b * bs; i < (b + 1) * bs; ++i) {
            a += num[i];
            d += den[i];
        }
        a /= bs;
        d /= bs;
        double resid = (a - r.ratio * d) / ds.mean;
        acc += resid * resid;
    }
    r.ratio_err = std::sqrt(acc / (batches * (batches - 1)));
    return r;
}

int two_point_connect(const SpinConfig& cfg, int x, int y, RngStream& rng) {
    if (!cfg.graph().boundary().empty())
        throw std::invalid_argument("two_point_connect needs a free or torus topology");
    if (x == y) return 1;
    ReflectionAxis axis(cfg.theta(y) + kPi / 2);
    BondConfig bonds = sample_bonds(cfg, axis, rng);
    ClusterPartition part = components(cfg.graph(), bonds);
    return part.label[x] == part.label[y] ? 1 : 0;
}

} // namespace o2rc
