#pragma once

#include <cstdint>
#include <stdexcept>

namespace mcr {

// Component domain Z_r. Values live in [0, r-1] and wrap on overflow.
// For power-of-two r the reduction is a bit mask; otherwise an explicit
// division. Both paths must produce identical results (tested).
struct Modulus {
    std::uint32_t r = 2;           // ring size, >= 2
    std::uint32_t bits = 1;        // storage bits per component, ceil(log2 r)
    bool power_of_two = true;

    static Modulus of(std::uint32_t r) {
        if (r < 2) throw std::invalid_argument("Modulus: r must be >= 2");
        if (r > (1u << 16)) throw std::invalid_argument("Modulus: r > 2^16 unsupported");
        std::uint32_t b = 1;
        while ((1ull << b) < r) ++b;
        return Modulus{r, b, (1u << b) == r};
    }

    bool operator==(const Modulus&) const = default;
};

// x mod r, result in [0, r-1] for any integer x.
inline std::uint32_t mod_reduce(std::int64_t x, const Modulus& mod) {
    if (mod.power_of_two) {
        // Two's-complement masking: the low b bits are x mod 2^b.
        return static_cast<std::uint32_t>(x) & (mod.r - 1u);
    }
    std::int64_t m = x % static_cast<std::int64_t>(mod.r);
    if (m < 0) m += mod.r;
    return static_cast<std::uint32_t>(m);
}

// Division-path reduction regardless of power_of_two; the mask path must
// match this bit for bit.
inline std::uint32_t mod_reduce_div(std::int64_t x, const Modulus& mod) {
    std::int64_t m = x % static_cast<std::int64_t>(mod.r);
    if (m < 0) m += mod.r;
    return static_cast<std::uint32_t>(m);
}

// Circular distance between two ring values: min(a-b, b-a) taken mod r.
// This is a metric on Z_r with maximum floor(r/2).
inline std::uint32_t circular_distance(std::uint32_t a, std::uint32_t b, const Modulus& mod) {
    std::uint32_t d = mod_reduce(static_cast<std::int64_t>(a) - static_cast<std::int64_t>(b), mod);
    std::uint32_t e = mod.r - d;         // == mod_r(b - a) unless d == 0
    return d == 0 ? 0 : (d < e ? d : e);
}

} // namespace mcr
