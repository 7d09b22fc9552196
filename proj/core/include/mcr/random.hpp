#pragma once

#include <cstdint>
#include <vector>

namespace mcr {

// Deterministic pseudorandom stream based on SplitMix64 (Steele, Lea,
// Flood 2014). Chosen over std::mt19937 because the algorithm fits in a
// dozen lines and is trivial to reproduce in another language when
// checking result tables. Identical seeds yield identical streams on any
// platform.
class RandomSource {
public:
    explicit RandomSource(std::uint64_t seed) : seed_(seed), state_(seed) {}

    std::uint64_t seed() const { return seed_; }

    std::uint64_t next_u64() {
        state_ += 0x9E3779B97F4A7C15ull;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    // Uniform integer in [0, n). Masked rejection sampling: draw the
    // smallest covering power-of-two number of bits until the value
    // lands below n. Unbiased and reproducible.
    std::uint64_t uniform_below(std::uint64_t n) {
        if (n <= 1) return 0;
        std::uint64_t mask = n - 1;
        mask |= mask >> 1; mask |= mask >> 2; mask |= mask >> 4;
        mask |= mask >> 8; mask |= mask >> 16; mask |= mask >> 32;
        std::uint64_t v;
        do { v = next_u64() & mask; } while (v >= n);
        return v;
    }

    double uniform_double() {  // in [0, 1)
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    bool next_bit() { return (next_u64() & 1ull) != 0; }

    // Independent child stream. Distinct tags give statistically
    // independent streams; the derivation is pure integer mixing so the
    // mapping (seed, tag) -> substream is stable across platforms.
    RandomSource substream(std::uint64_t tag) const {
        RandomSource mixer(seed_ ^ (0xA24BAED4963EE407ull + tag * 0x9E3779B97F4A7C15ull));
        return RandomSource(mixer.next_u64());
    }

    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::size_t j = static_cast<std::size_t>(uniform_below(i));
            std::swap(v[i - 1], v[j]);
        }
    }

private:
    std::uint64_t seed_;
    std::uint64_t state_;
};

} // namespace mcr
