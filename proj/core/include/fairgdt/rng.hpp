#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>

namespace fairgdt {

/// Deterministic 64-bit random stream (splitmix64). Hand-rolled so that
/// sequences are identical across platforms and standard-library versions;
/// everything downstream (fold shuffles, bootstrap draws, leaf sampling)
/// depends on that.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    /// Uniform in [0, 1) with 53-bit resolution.
    double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    /// Uniform index in [0, n); n must be positive.
    std::size_t uniform_index(std::size_t n) {
        return static_cast<std::size_t>(
            (static_cast<unsigned __int128>(next()) * static_cast<unsigned __int128>(n)) >> 64);
    }

    bool bernoulli(double p) { return uniform01() < p; }

    /// Standard normal via Box-Muller.
    double normal() {
        double u1 = 1.0 - uniform01();  // (0, 1]
        double u2 = uniform01();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
    }

    /// Derives an independent substream seed. Used for the per-column and
    /// per-leaf streams of the sampler: substream = derive(master, tag).
    static std::uint64_t derive(std::uint64_t seed, std::uint64_t tag) {
        Rng r(seed ^ (0xD1B54A32D192ED03ull * (tag + 1)));
        r.next();
        return r.next();
    }

private:
    std::uint64_t state_;
};

}  // namespace fairgdt
