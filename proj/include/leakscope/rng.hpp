#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace leakscope::rng {

inline std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// xoshiro256** seeded through splitmix64. Byte-identical on every platform,
// unlike the standard distributions.
class Stream {
public:
    explicit Stream(std::uint64_t seed) {
        std::uint64_t sm = seed;
        for (auto& word : state_) word = splitmix64(sm);
    }

    std::uint64_t next() {
        const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    // Unbiased integer in [0, bound) via rejection sampling.
    std::uint64_t uniform(std::uint64_t bound) {
        if (bound <= 1) return 0;
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
        std::uint64_t value;
        do {
            value = next();
        } while (value >= limit);
        return value % bound;
    }

    std::size_t index(std::size_t size) { return static_cast<std::size_t>(uniform(size)); }

    template <typename T>
    const T& pick(const std::vector<T>& pool) {
        return pool[index(pool.size())];
    }

    template <typename T>
    void shuffle(std::vector<T>& items) {
        for (std::size_t i = items.size(); i > 1; --i) {
            std::size_t j = index(i);
            using std::swap;
            swap(items[i - 1], items[j]);
        }
    }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

    std::uint64_t state_[4] = {};
};

// Derives an independent per-element stream from a master seed.
inline Stream split_stream(std::uint64_t seed, std::uint64_t element) {
    std::uint64_t sm = seed ^ (0x9E3779B97F4A7C15ULL * (element + 1));
    std::uint64_t derived = splitmix64(sm);
    return Stream(derived);
}

} // namespace leakscope::rng
