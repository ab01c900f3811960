#pragma once

#include <cmath>
#include <complex>
#include <cstdint>

namespace otfs {

/**
 * Counter-friendly 64-bit generator (splitmix64). Each Monte Carlo trial owns
 * a private stream derived from (master_seed, trial_index), so results do not
 * depend on scheduling or worker count.
 */
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    /// Stateless avalanche mix (splitmix64 finalizer).
    static std::uint64_t mix(std::uint64_t x) {
        x += 0x9E3779B97F4A7C15ULL;
        x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
        x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
        return x ^ (x >> 31);
    }

    /// Independent substream for trial `index` under `master_seed`.
    static SplitMix64 substream(std::uint64_t master_seed, std::uint64_t index) {
        return SplitMix64(mix(master_seed ^ mix(index + 0x632BE59BD9B4E019ULL)));
    }

    std::uint64_t next_u64() {
        state_ += 0x9E3779B97F4A7C15ULL;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    /// Uniform in [0, 1), 53-bit resolution.
    double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Uniform in (0, 1]; safe as a log() argument.
    double next_unit_open() {
        return (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;
    }

    /// Exponential with the given mean.
    double next_exp(double mean) { return -mean * std::log(next_unit_open()); }

    /// Circularly-symmetric complex Gaussian CN(0, variance):
    /// squared magnitude exponential with mean `variance`, phase uniform.
    std::complex<double> next_cgauss(double variance) {
        const double r = std::sqrt(next_exp(variance));
        const double phi = 2.0 * M_PI * next_unit();
        return {r * std::cos(phi), r * std::sin(phi)};
    }

private:
    std::uint64_t state_;
};

} // namespace otfs
