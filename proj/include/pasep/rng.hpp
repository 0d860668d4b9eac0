/**
 * @file rng.hpp
 * @brief Counter-based random number generator keyed by (seed, stream).
 *
 * A splitmix64-style finalizer over a 64-bit counter gives every replica an
 * independent, order-insensitive stream: drawing from stream r never touches
 * the state of stream r'.
 */
#pragma once

#include <cmath>
#include <cstdint>

namespace pasep {

inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

class CounterRng {
  public:
    CounterRng(std::uint64_t seed, std::uint64_t stream)
        : key_(mix64(seed ^ mix64(stream * 0xD1342543DE82EF95ULL))), ctr_(0) {}

    std::uint64_t next_u64() { return mix64(key_ ^ (ctr_++ * 0x2545F4914F6CDD1DULL + 0x9E3779B97F4A7C15ULL)); }

    /** Uniform in (0, 1); never returns 0 so log() is safe. */
    double uniform() {
        return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
    }

    /** Exponential waiting time with the given total rate. */
    double exponential(double rate) { return -std::log(uniform()) / rate; }

    /** Bernoulli draw. */
    bool bernoulli(double p) { return uniform() < p; }

  private:
    std::uint64_t key_;
    std::uint64_t ctr_;
};

}  // namespace pasep
