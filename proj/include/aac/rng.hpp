#pragma once

#include <cstddef>
#include <cstdint>

namespace aac {

/// splitmix64: tiny, fast, passes BigCrush. Used for all stochastic inputs
/// so that runs are reproducible from a single 64-bit seed.
struct SplitMix64 {
    std::uint64_t state;

    explicit SplitMix64(std::uint64_t seed) : state(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    /// Uniform double in (0, 1]. Never returns 0, so log() is safe.
    double next_unit() {
        return static_cast<double>((next() >> 11) + 1) * 0x1.0p-53;
    }
};

/// Zero-mean Gaussian samples for one control step, as a pure function of
/// (seed, step). Box-Muller on a splitmix64 stream offset by the step index;
/// the same (seed, step) always yields the same draw.
void gaussian_step_samples(std::uint64_t seed, std::uint64_t step, double sigma,
                           double* out, std::size_t n);

}  // namespace aac
