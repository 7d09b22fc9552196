#include "mcr/packed.hpp"

#include <bit>
#include <stdexcept>

namespace mcr {

namespace {

void require_compatible(const PackedHypervector& a, const PackedHypervector& b, const char* op) {
    if (a.modulus() != b.modulus() || a.dim() != b.dim())
        throw std::invalid_argument(std::string(op) + ": modulus/dim mismatch");
}

// Repeats an in-field pattern across all fields of a word.
constexpr std::uint64_t broadcast(std::uint64_t pattern, std::uint32_t bits) {
    std::uint64_t w = 0;
    for (std::uint32_t off = 0; off < 64; off += bits) w |= pattern << off;
    return w;
}

struct SwarMasks {
    std::uint64_t top;  // highest bit of each field
    std::uint64_t lsb;  // lowest bit of each field
    std::uint64_t low;  // all bits but the highest of each field

    static SwarMasks of(std::uint32_t bits) {
        SwarMasks m{};
        m.top = broadcast(1ull << (bits - 1), bits);
        m.lsb = broadcast(1ull, bits);
        m.low = ~m.top & broadcast((1ull << bits) - 1ull, bits);
        return m;
    }
};

// Per-field addition modulo 2^b: add the low bits, then patch the top
// bits with carry-free XOR.
inline std::uint64_t swar_add(std::uint64_t x, std::uint64_t y, const SwarMasks& m) {
    return ((x & ~m.top) + (y & ~m.top)) ^ ((x ^ y) & m.top);
}

// Per-field subtraction modulo 2^b without inter-field borrows.
inline std::uint64_t swar_sub(std::uint64_t x, std::uint64_t y, const SwarMasks& m) {
    return ((x | m.top) - (y & ~m.top)) ^ ((x ^ ~y) & m.top);
}

} // namespace

PackedHypervector::PackedHypervector(Modulus mod, std::size_t dim) : mod_(mod), dim_(dim) {
    if (!supports(mod)) throw std::invalid_argument("PackedHypervector: unsupported modulus");
    if (dim == 0) throw std::invalid_argument("PackedHypervector: dim must be >= 1");
    const std::size_t per = 64 / mod.bits;
    words_.assign((dim + per - 1) / per, 0);
}

PackedHypervector::PackedHypervector(const Hypervector& hv)
    : PackedHypervector(hv.modulus(), hv.dim()) {
    const std::uint32_t bits = mod_.bits;
    const std::size_t per = 64 / bits;
    const auto& comp = hv.components();
    for (std::size_t i = 0; i < comp.size(); ++i)
        words_[i / per] |= static_cast<std::uint64_t>(comp[i]) << ((i % per) * bits);
}

Hypervector PackedHypervector::unpack() const {
    std::vector<std::uint16_t> comp(dim_);
    for (std::size_t i = 0; i < dim_; ++i) comp[i] = component(i);
    return Hypervector(mod_, std::move(comp));
}

PackedHypervector packed_bind(const PackedHypervector& a, const PackedHypervector& b) {
    require_compatible(a, b, "packed_bind");
    PackedHypervector out(a.modulus(), a.dim());
    const auto m = SwarMasks::of(a.modulus().bits);
    const auto& aw = a.words();
    const auto& bw = b.words();
    auto& ow = out.words();
    for (std::size_t w = 0; w < aw.size(); ++w) ow[w] = swar_add(aw[w], bw[w], m);
    return out;
}

PackedHypervector packed_unbind(const PackedHypervector& a, const PackedHypervector& b) {
    require_compatible(a, b, "packed_unbind");
    PackedHypervector out(a.modulus(), a.dim());
    const auto m = SwarMasks::of(a.modulus().bits);
    const auto& aw = a.words();
    const auto& bw = b.words();
    auto& ow = out.words();
    std::size_t tail = a.dim() % (64 / a.modulus().bits);
    for (std::size_t w = 0; w < aw.size(); ++w) ow[w] = swar_sub(aw[w], bw[w], m);
    if (tail != 0) {
        // swar_sub turns 0-0 padding fields into 0, but keep the tail
        // masked explicitly in case callers poke raw words.
        const std::uint64_t keep = (~0ull) >> (64 - tail * a.modulus().bits);
        ow.back() &= keep;
    }
    return out;
}

std::uint64_t packed_distance(const PackedHypervector& a, const PackedHypervector& b) {
    require_compatible(a, b, "packed_distance");
    const std::uint32_t bits = a.modulus().bits;
    const auto& aw = a.words();
    const auto& bw = b.words();

    if (bits == 1) {
        // r = 2: circular distance is XOR, so the total is a popcount.
        std::uint64_t total = 0;
        for (std::size_t w = 0; w < aw.size(); ++w)
            total += static_cast<std::uint64_t>(std::popcount(aw[w] ^ bw[w]));
        return total;
    }

    const auto m = SwarMasks::of(bits);
    const std::uint64_t fmask = (1ull << bits) - 1ull;
    std::uint64_t total = 0;
    for (std::size_t w = 0; w < aw.size(); ++w) {
        const std::uint64_t d = swar_sub(aw[w], bw[w], m);
        const std::uint64_t n = swar_sub(0, d, m);  // (r - d) mod r per field
        // Select d where its top bit is clear (d <= r/2), else r - d.
        const std::uint64_t sel = (d >> (bits - 1)) & m.lsb;
        const std::uint64_t selmask = sel * fmask;
        const std::uint64_t mins = (d & ~selmask) | (n & selmask);

        if (bits == 2) {
            // Field values <= 2; widen pairwise, then one multiply-sum.
            std::uint64_t t = (mins & 0x3333333333333333ull) +
                              ((mins >> 2) & 0x3333333333333333ull);
            t = (t & 0x0F0F0F0F0F0F0F0Full) + ((t >> 4) & 0x0F0F0F0F0F0F0F0Full);
            total += (t * 0x0101010101010101ull) >> 56;
        } else if (bits == 4) {
            // Field values <= 8; byte sums stay under 256.
            std::uint64_t t = (mins & 0x0F0F0F0F0F0F0F0Full) +
                              ((mins >> 4) & 0x0F0F0F0F0F0F0F0Full);
            total += (t * 0x0101010101010101ull) >> 56;
        } else if (bits == 8) {
            std::uint64_t t =
                (mins & 0x00FF00FF00FF00FFull) + ((mins >> 8) & 0x00FF00FF00FF00FFull);
            t = (t & 0x0000FFFF0000FFFFull) + ((t >> 16) & 0x0000FFFF0000FFFFull);
            total += (t & 0xFFFFFFFFull) + (t >> 32);
        } else {  // bits == 16
            total += (mins & 0xFFFFull) + ((mins >> 16) & 0xFFFFull) +
                     ((mins >> 32) & 0xFFFFull) + (mins >> 48);
        }
    }
    return total;
}

} // namespace mcr
