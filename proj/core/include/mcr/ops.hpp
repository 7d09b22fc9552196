#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "mcr/fixed_point.hpp"
#include "mcr/hypervector.hpp"
#include "mcr/modulus.hpp"

namespace mcr {

// --- ring algebra ----------------------------------------------------------

// Componentwise modular sum / difference. Inputs must share modulus and
// dimension. unbind(bind(h,u), u) == h exactly.
Hypervector bind(const Hypervector& h, const Hypervector& u);
Hypervector unbind(const Hypervector& c, const Hypervector& u);

// Modular Manhattan distance: sum over components of the circular
// distance min(mod_r(h-u), mod_r(u-h)). Range [0, D*floor(r/2)].
std::uint64_t distance(const Hypervector& h, const Hypervector& u);

// Division-path twins, kept as the general-r baseline for equivalence
// tests and the fast-vs-reference microbenchmark.
Hypervector bind_div(const Hypervector& h, const Hypervector& u);
Hypervector unbind_div(const Hypervector& c, const Hypervector& u);
std::uint64_t distance_div(const Hypervector& h, const Hypervector& u);

// out[i] = h[(i - shift) mod D]; any integer shift.
Hypervector permute_cyclic(const Hypervector& h, std::int64_t shift);

// Moves whole blocks: block j of the input lands at block (j + shift)
// mod (D / block_size). block_size must divide D.
Hypervector permute_block(const Hypervector& h, std::size_t block_size, std::int64_t shift);

// Index of the nearest prototype by modular Manhattan distance; ties
// break to the lowest index.
std::size_t search(const Hypervector& query, std::span<const Hypervector> prototypes);

// --- superposition ----------------------------------------------------------

// Fixed-point Cartesian superposition state (the intermediate form of
// bundling). Each accumulated vector contributes one unit phasor per
// component via the trig LUT; the running integer sum of raw components
// is kept for the undefined-phase fallback. Additions saturate at the
// format bounds and saturation events are counted.
class CartesianAccumulator {
public:
    CartesianAccumulator(const TrigLUT& lut, std::size_t dim,
                         FixedPointFormat fmt = FixedPointFormat::q6_10());

    // Test/tooling entry: adopt raw fixed-point state directly.
    static CartesianAccumulator from_raw(const TrigLUT& lut, FixedPointFormat fmt,
                                         std::vector<std::int32_t> re,
                                         std::vector<std::int32_t> im,
                                         std::vector<std::int64_t> intsum,
                                         std::uint32_t count);

    void accumulate(const Hypervector& h);

    const Modulus& modulus() const { return lut_.mod; }
    const FixedPointFormat& format() const { return fmt_; }
    std::size_t dim() const { return re_.size(); }
    std::uint32_t count() const { return count_; }
    std::uint64_t saturation_events() const { return saturations_; }

    std::int32_t re_raw(std::size_t i) const { return re_[i]; }
    std::int32_t im_raw(std::size_t i) const { return im_[i]; }
    std::int64_t int_sum(std::size_t i) const { return intsum_[i]; }
    const TrigLUT& lut() const { return lut_; }

private:
    TrigLUT lut_;
    FixedPointFormat fmt_;
    std::vector<std::int32_t> re_, im_;
    std::vector<std::int64_t> intsum_;
    std::uint32_t count_ = 0;
    std::uint64_t saturations_ = 0;
};

struct NormalizeStats {
    std::uint64_t fallback_components = 0;  // zero-magnitude, integer-mean rule
    std::uint64_t tie_components = 0;       // WTA argmax attained more than once
};

// Phase decoding via floating-point atan2: w = mod_r(round(r/2pi *
// mod_2pi(atan2(im, re)))). Components whose resultant is below the
// zero epsilon use the integer-mean fallback instead.
Hypervector normalize_reference(const CartesianAccumulator& acc, NormalizeStats* stats = nullptr);

// Winner-take-all normalization: picks argmax_k of the integer inner
// product re*cos_raw[k] + im*sin_raw[k], searching only the r/4+1
// candidates of the quadrant given by the sign bits of (re, im). Ties
// resolve to the lowest canonical k. Requires power-of-two r >= 4.
Hypervector normalize_wta(const CartesianAccumulator& acc, NormalizeStats* stats = nullptr);

} // namespace mcr
