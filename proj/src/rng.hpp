#pragma once

#include <cstdint>

namespace rangewalk {

// Counter-based generator: word(c) is a pure function of (seed, c), so any
// batch can be split across workers by counter range and merged by index
// without changing a single draw.
//
// word(c) = splitmix64_mix(seed + (c + 1) * 0x9E3779B97F4A7C15)
// uniform01(c) = (word(c) >> 11) * 2^-53, in [0, 1).
class CounterRng {
public:
    explicit CounterRng(std::uint64_t seed) : seed_(seed) {}

    static std::uint64_t mix(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    std::uint64_t word(std::uint64_t counter) const {
        return mix(seed_ + (counter + 1) * 0x9E3779B97F4A7C15ull);
    }

    double uniform01(std::uint64_t counter) const {
        return static_cast<double>(word(counter) >> 11) * 0x1.0p-53;
    }

    std::uint64_t seed() const { return seed_; }

private:
    std::uint64_t seed_;
};

} // namespace rangewalk
