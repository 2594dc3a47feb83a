#ifndef PICARD_RNG_HPP
#define PICARD_RNG_HPP

#include <cstdint>

namespace picard {

// Seedable splitmix64 stream.  All randomized algorithms take an Rng&
// explicitly; nothing in the library touches global entropy, so a fixed
// seed replays a whole computation bit for bit on any platform.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    // uniform in [0, n), n >= 1, without modulo bias
    std::uint64_t below(std::uint64_t n) {
        if (n <= 1) return 0;
        std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
        for (;;) {
            std::uint64_t v = next_u64();
            if (v < limit) return v % n;
        }
    }

    bool coin() { return next_u64() & 1; }

    // derive an independent stream (for subcomputations that must not
    // perturb the parent stream)
    Rng fork() { return Rng(next_u64() ^ 0xd1b54a32d192ed03ull); }

private:
    std::uint64_t state_;
};

}  // namespace picard

#endif
