#include "aac/rng.hpp"

#include <cmath>

namespace aac {

void gaussian_step_samples(std::uint64_t seed, std::uint64_t step, double sigma,
                           double* out, std::size_t n) {
    SplitMix64 sm(seed + 0x9E3779B97F4A7C15ULL * (step + 1));
    const double two_pi = 6.283185307179586476925286766559;
    for (std::size_t i = 0; i < n; i += 2) {
        const double u1 = sm.next_unit();  // in (0,1], log is safe
        const double u2 = sm.next_unit();
        const double r = std::sqrt(-2.0 * std::log(u1));
        out[i] = sigma * r * std::cos(two_pi * u2);
        if (i + 1 < n) out[i + 1] = sigma * r * std::sin(two_pi * u2);
    }
}

}  // namespace aac
