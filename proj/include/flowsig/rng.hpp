#pragma once

#include <cstdint>
#include <string_view>

namespace flowsig {

// splitmix64; fixed here so seeded fixtures are byte-identical everywhere.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        state_ += 0x9E3779B97F4A7C15ull;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    // Uniform in [0, n); n >= 1.
    std::uint64_t below(std::uint64_t n) { return next() % n; }

    // Uniform integer in [lo, hi] inclusive.
    int range(int lo, int hi) {
        return lo + static_cast<int>(below(static_cast<std::uint64_t>(hi - lo + 1)));
    }

private:
    std::uint64_t state_;
};

std::uint64_t fnv1a64(std::string_view text);

// Fixed seed-splitting rule for dataset generation: one independent stream
// per (label, index) under a master seed.
std::uint64_t derive_seed(std::uint64_t master, std::string_view label,
                          std::uint64_t index);

}  // namespace flowsig
