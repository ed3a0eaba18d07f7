#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <utility>

#include "kerdock/linalg.hpp"

namespace kerdock {

inline std::uint64_t splitmix64_next(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

/// Counter-based substream derivation: the stream for (master seed, SNR point,
/// trial) is a pure function of the three values, so serial and parallel
/// schedules draw identical randomness for every trial.
inline std::uint64_t substream_seed(std::uint64_t master, std::uint64_t point, std::uint64_t trial) {
    std::uint64_t s = master;
    s ^= splitmix64_next(s) ^ (point * 0xD1B54A32D192ED03ull);
    s ^= splitmix64_next(s) ^ (trial * 0x9E3779B97F4A7C15ull);
    return splitmix64_next(s);
}

/// Per-trial random stream. Uniform doubles come from the top 53 bits of an
/// mt19937_64 word; Gaussians are Box-Muller pairs, so the whole sequence is
/// pinned down by this header alone.
class TrialRng {
  public:
    explicit TrialRng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t next_u64() { return gen_(); }

    double uniform01() { return double(gen_() >> 11) * 0x1.0p-53; }  // [0, 1)

    std::pair<double, double> normal_pair() {
        const double u1 = 1.0 - uniform01();  // (0, 1], keeps log finite
        const double u2 = uniform01();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double th = 2.0 * M_PI * u2;
        return {r * std::cos(th), r * std::sin(th)};
    }

    /// Circularly symmetric complex Gaussian, unit variance (1/2 per part).
    Complex cnormal() {
        const auto [a, b] = normal_pair();
        return Complex{a, b} / std::sqrt(2.0);
    }

  private:
    std::mt19937_64 gen_;
};

}  // namespace kerdock
