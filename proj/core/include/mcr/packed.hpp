#pragma once

#include <cstdint>
#include <vector>

#include "mcr/hypervector.hpp"
#include "mcr/modulus.hpp"

namespace mcr {

// Bit-packed hypervector for the overflow-wrap fast path. Components sit
// in b-bit fields of 64-bit words (little-endian field order, matching
// the byte-stream packing of hypervector.hpp). Supported when r is a
// power of two whose field width divides 64, i.e. b in {1,2,4,8,16}:
// fields then never straddle a word and modular wrap-around is plain
// binary overflow inside each field.
class PackedHypervector {
public:
    static bool supports(const Modulus& mod) {
        return mod.power_of_two &&
               (mod.bits == 1 || mod.bits == 2 || mod.bits == 4 || mod.bits == 8 ||
                mod.bits == 16);
    }

    PackedHypervector() = default;
    explicit PackedHypervector(const Hypervector& hv);
    PackedHypervector(Modulus mod, std::size_t dim);  // zero-filled

    Hypervector unpack() const;

    const Modulus& modulus() const { return mod_; }
    std::size_t dim() const { return dim_; }
    std::size_t word_count() const { return words_.size(); }
    const std::vector<std::uint64_t>& words() const { return words_; }
    std::vector<std::uint64_t>& words() { return words_; }

    std::uint16_t component(std::size_t i) const {
        const std::uint32_t per = 64 / mod_.bits;
        const std::uint64_t w = words_[i / per];
        const std::uint32_t off = static_cast<std::uint32_t>(i % per) * mod_.bits;
        return static_cast<std::uint16_t>((w >> off) & field_mask());
    }

    std::uint64_t field_mask() const {
        return mod_.bits == 64 ? ~0ull : ((1ull << mod_.bits) - 1ull);
    }

    bool operator==(const PackedHypervector&) const = default;

private:
    Modulus mod_;
    std::size_t dim_ = 0;
    std::vector<std::uint64_t> words_;
};

// SWAR kernels: componentwise modular add/subtract and modular Manhattan
// distance computed 64 bits at a time. Bit-identical to the scalar
// division-path operations on the unpacked vectors.
PackedHypervector packed_bind(const PackedHypervector& a, const PackedHypervector& b);
PackedHypervector packed_unbind(const PackedHypervector& a, const PackedHypervector& b);
std::uint64_t packed_distance(const PackedHypervector& a, const PackedHypervector& b);

} // namespace mcr
