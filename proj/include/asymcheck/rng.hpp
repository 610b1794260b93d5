#pragma once

#include <cstdint>

namespace asymcheck {

// SplitMix64. Used instead of <random> engines so that seeded streams are
// identical across platforms and standard libraries.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // uniform in [0, n)
    std::uint64_t below(std::uint64_t n) {
        // rejection sampling to avoid modulo bias
        std::uint64_t limit = ~0ULL - ~0ULL % n;
        std::uint64_t v;
        do { v = next(); } while (v >= limit);
        return v % n;
    }

    bool bit() { return next() >> 63; }

    // independent substream for item `index` of the stream named by `seed`;
    // lets parallel workers draw the same value for the same index
    static Rng at(std::uint64_t seed, std::uint64_t index) {
        Rng mix(seed ^ (0x9e3779b97f4a7c15ULL * (index + 1)));
        return Rng(mix.next());
    }

private:
    std::uint64_t state_;
};

} // namespace asymcheck
