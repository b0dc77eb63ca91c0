// rng.hpp — deterministic per-trajectory Gaussian noise streams
//
// splitmix64 is a counter-mode generator: the state advances by a fixed
// increment and the output is a bijective mix of the counter. Substreams are
// derived from (seed, stream index) only, so draws never depend on thread
// scheduling and runs are bit-reproducible at any worker count.

#pragma once

#include <cmath>
#include <cstdint>

#include "kerrchaos/types.hpp"

namespace kerrchaos {

inline std::uint64_t splitmix64_next(std::uint64_t& state) {
    state += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

class GaussianStream {
public:
    GaussianStream(std::uint64_t seed, std::uint64_t stream) {
        // two mixing rounds decorrelate (seed, stream) pairs
        std::uint64_t s = seed ^ 0xD1B54A32D192ED03ULL;
        splitmix64_next(s);
        s ^= stream * 0x9E3779B97F4A7C15ULL + 0x2545F4914F6CDD1DULL;
        splitmix64_next(s);
        state_ = s;
    }

    // uniform double in (0, 1]
    double next_uniform() {
        return static_cast<double>((splitmix64_next(state_) >> 11) + 1) * 0x1.0p-53;
    }

    // standard normal via Box-Muller (portable, unlike std::normal_distribution)
    double next_normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const double u1 = next_uniform();
        const double u2 = next_uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double theta = 2.0 * kPi * u2;
        spare_ = r * std::sin(theta);
        have_spare_ = true;
        return r * std::cos(theta);
    }

    // complex Wiener increment with E[dw dw*] = dt, E[dw dw] = 0
    Complex next_wiener(double dt) {
        const double s = std::sqrt(0.5 * dt);
        const double re = next_normal();
        const double im = next_normal();
        return Complex{s * re, s * im};
    }

private:
    std::uint64_t state_ = 0;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

} // namespace kerrchaos
