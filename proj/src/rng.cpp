#include "flowsig/rng.hpp"

namespace flowsig {

std::uint64_t fnv1a64(std::string_view text) {
    std::uint64_t h = 0xCBF29CE484222325ull;
    for (unsigned char c : text) {
        h ^= c;
        h *= 0x100000001B3ull;
    }
    return h;
}

std::uint64_t derive_seed(std::uint64_t master, std::string_view label,
                          std::uint64_t index) {
    std::uint64_t h = fnv1a64(label);
    h ^= index + 0x9E3779B97F4A7C15ull + (h << 6) + (h >> 2);
    SplitMix64 g(master ^ h);
    return g.next();
}

}  // namespace flowsig
