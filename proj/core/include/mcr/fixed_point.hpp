#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "mcr/modulus.hpp"

namespace mcr {

// Signed fixed-point format for the Cartesian superposition state.
// total_bits counts the sign bit; frac_bits is the scale (raw = value *
// 2^frac). The default Q6.10 (sign + 5 integer + 10 fraction) holds
// sums of up to 31 unit phasors without saturating; wider formats are
// used where longer accumulation chains are expected.
struct FixedPointFormat {
    int total_bits = 16;
    int frac_bits = 10;

    static FixedPointFormat q6_10() { return {16, 10}; }
    static FixedPointFormat wide() { return {32, 10}; }  // Q22.10

    std::int64_t raw_min() const { return -(std::int64_t(1) << (total_bits - 1)); }
    std::int64_t raw_max() const { return (std::int64_t(1) << (total_bits - 1)) - 1; }
    std::int64_t one_raw() const { return std::int64_t(1) << frac_bits; }

    // Zero-magnitude threshold for the undefined-phase fallback: a
    // resultant counts as zero when |re| and |im| are both under
    // 2^-(frac_bits-2), i.e. 4 raw LSBs regardless of the split.
    static constexpr std::int64_t kZeroEpsRaw = 4;

    void validate() const {
        if (total_bits < 8 || total_bits > 32 || frac_bits < 4 || frac_bits >= total_bits - 1)
            throw std::invalid_argument("FixedPointFormat: unsupported split");
    }
};

// Rounds half away from zero, the rounding used everywhere a real value
// is discretized back to the ring.
inline std::int64_t round_half_away(double x) { return std::llround(x); }

// cos/sin of the r ring directions, tabulated once per modulus in fixed
// point. cos_raw[0] is exactly +1.0 in raw units and sin_raw[0] is 0.
struct TrigLUT {
    Modulus mod;
    int frac_bits = 10;
    std::vector<std::int32_t> cos_raw;
    std::vector<std::int32_t> sin_raw;

    static TrigLUT of(const Modulus& mod, int frac_bits = 10) {
        TrigLUT lut;
        lut.mod = mod;
        lut.frac_bits = frac_bits;
        lut.cos_raw.resize(mod.r);
        lut.sin_raw.resize(mod.r);
        const double scale = static_cast<double>(std::int64_t(1) << frac_bits);
        for (std::uint32_t k = 0; k < mod.r; ++k) {
            const double phase = 2.0 * std::numbers::pi * k / mod.r;
            lut.cos_raw[k] = static_cast<std::int32_t>(round_half_away(std::cos(phase) * scale));
            lut.sin_raw[k] = static_cast<std::int32_t>(round_half_away(std::sin(phase) * scale));
        }
        return lut;
    }
};

} // namespace mcr
