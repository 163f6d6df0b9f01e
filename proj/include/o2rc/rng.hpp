#pragma once

#include <cstdint>
#include <random>

namespace o2rc {

// One independent random stream per chain. Streams are derived from a
// (seed, stream) pair with splitmix64 so that runs are bit-reproducible
// regardless of how chains are scheduled onto workers.
//
// Uniform doubles are produced from the top 53 bits of the engine output
// rather than std::uniform_real_distribution, whose output is not pinned
// down by the standard.
class RngStream {
public:
    explicit RngStream(std::uint64_t seed, std::uint64_t stream = 0) {
        std::uint64_t s = seed ^ (0x9e3779b97f4a7c15ULL * (stream + 1));
        std::uint64_t init[4];
        for (auto& w : init) w = splitmix64(s);
        std::seed_seq seq{static_cast<std::uint32_t>(init[0]), static_cast<std::uint32_t>(init[0] >> 32),
                          static_cast<std::uint32_t>(init[1]), static_cast<std::uint32_t>(init[1] >> 32),
                          static_cast<std::uint32_t>(init[2]), static_cast<std::uint32_t>(init[2] >> 32),
                          static_cast<std::uint32_t>(init[3]), static_cast<std::uint32_t>(init[3] >> 32)};
        eng_.seed(seq);
    }

    std::uint64_t next_u64() { return eng_(); }

    // in [0, 1)
    double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

    double uniform(double a, double b) { return a + (b - a) * uniform(); }

    // in {0, ..., n-1}; consumes exactly one draw
    int uniform_int(int n) {
        int k = static_cast<int>(uniform() * n);
        return k < n ? k : n - 1;
    }

private:
    static std::uint64_t splitmix64(std::uint64_t& x) {
        x += 0x9e3779b97f4a7c15ULL;
        std::uint64_t z = x;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    std::mt19937_64 eng_;
};

} // namespace o2rc
