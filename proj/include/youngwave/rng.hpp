#pragma once

#include <cstdint>
#include <random>

namespace youngwave {

/// Deterministic stream for a (seed, replicate) pair. Streams for distinct
/// replicates are seeded through splitmix64 so they can be drawn in any order
/// or in parallel with identical results.
class Rng {
public:
    Rng(std::uint64_t seed, std::uint64_t replicate = 0) : engine_(mix(seed ^ mix(replicate + 0x5851f42d4c957f2dULL))) {}

    double normal() { return normal_(engine_); }
    double uniform(double a = 0.0, double b = 1.0) { return a + (b - a) * unit_(engine_); }
    std::mt19937_64& engine() { return engine_; }

    static std::uint64_t mix(std::uint64_t z) {
        z += 0x9e3779b97f4a7c15ULL;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

private:
    std::mt19937_64 engine_;
    std::normal_distribution<double> normal_{0.0, 1.0};
    std::uniform_real_distribution<double> unit_{0.0, 1.0};
};

}  // namespace youngwave
