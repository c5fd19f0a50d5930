// Deterministic RNG with cheap substream derivation: a splitmix64 mix of
// (seed, stream index) seeds a pcg32 per substream, so parallel and serial
// consumers of the same (seed, index) pairs see identical draws.
#pragma once

#include <cstdint>

namespace rankvote {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

// Key for the `index`-th substream of `seed`.
inline std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t index) {
    return splitmix64(seed ^ splitmix64(index + 0x632BE59BD9B4E019ULL));
}

class Pcg32 {
  public:
    explicit Pcg32(std::uint64_t seed) {
        state_ = 0;
        inc_ = (splitmix64(seed) << 1u) | 1u;
        next_u32();
        state_ += splitmix64(seed + 1);
        next_u32();
    }

    std::uint32_t next_u32() {
        const std::uint64_t old = state_;
        state_ = old * 6364136223846793005ULL + inc_;
        const std::uint32_t xorshifted = static_cast<std::uint32_t>(((old >> 18u) ^ old) >> 27u);
        const std::uint32_t rot = static_cast<std::uint32_t>(old >> 59u);
        return (xorshifted >> rot) | (xorshifted << ((32u - rot) & 31u));
    }

    std::uint64_t next_u64() {
        return (static_cast<std::uint64_t>(next_u32()) << 32) | next_u32();
    }

    // Uniform in [0, 1) with 53 random bits.
    double uniform() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) { return lo + uniform() * (hi - lo); }

    bool bernoulli(double p) { return uniform() < p; }

    // Unbiased uniform integer in [lo, hi] via rejection.
    std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
        const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
        std::uint64_t draw;
        do {
            draw = next_u64();
        } while (draw >= limit);
        return lo + static_cast<std::int64_t>(draw % span);
    }

    template <typename T>
    void shuffle(T first, T last) {
        const auto n = last - first;
        for (auto i = n - 1; i > 0; --i) {
            const auto j = uniform_int(0, i);
            std::swap(first[i], first[j]);
        }
    }

  private:
    std::uint64_t state_;
    std::uint64_t inc_;
};

}  // namespace rankvote
