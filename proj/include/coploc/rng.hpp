#pragma once

// Deterministic 64-bit generator (splitmix64) with unbiased bounded
// draws. Streams are identical on every platform, which the campaign's
// reproducibility contract depends on; standard-library distributions
// are implementation-defined and unsuitable here.

#include <cstdint>

namespace coploc {

class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    // Unbiased uniform draw from [0, bound) via rejection; bound >= 1.
    std::uint64_t uniform_below(std::uint64_t bound) {
        std::uint64_t threshold = (-bound) % bound;
        for (;;) {
            std::uint64_t r = next_u64();
            if (r >= threshold) return r % bound;
        }
    }

private:
    std::uint64_t state_;
};

// Mixes (seed, domain tag, a, b) into an independent stream seed, so
// per-trial generators are order-free and safe to evaluate in parallel.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t domain, std::uint64_t a,
                                 std::uint64_t b) {
    std::uint64_t s = seed;
    for (std::uint64_t part : {domain, a, b}) {
        Rng mix(s ^ part);
        s = mix.next_u64();
    }
    return s;
}

}  // namespace coploc
