#include "mcr/hypervector.hpp"

#include <array>
#include <cstring>
#include <fstream>
#include <ostream>
#include <istream>

namespace mcr {

Hypervector random_hypervector(const Modulus& mod, std::size_t dim, RandomSource& rng) {
    if (dim == 0) throw std::invalid_argument("random_hypervector: dim must be >= 1");
    std::vector<std::uint16_t> c(dim);
    for (auto& v : c) v = static_cast<std::uint16_t>(rng.uniform_below(mod.r));
    return Hypervector(mod, std::move(c));
}

std::size_t packed_payload_bytes(std::size_t dim, std::uint32_t bits) {
    return (dim * bits + 7) / 8;
}

std::vector<std::uint8_t> pack_components(std::span<const std::uint16_t> components,
                                          const Modulus& mod) {
    for (auto c : components)
        if (c >= mod.r) throw std::invalid_argument("pack_components: component >= r");
    const std::uint32_t b = mod.bits;
    std::vector<std::uint8_t> out(packed_payload_bytes(components.size(), b), 0);
    std::size_t bitpos = 0;
    for (auto c : components) {
        std::uint32_t v = c;
        std::size_t byte = bitpos >> 3;
        std::uint32_t off = static_cast<std::uint32_t>(bitpos & 7);
        // Up to 3 bytes can be touched for b <= 16.
        std::uint32_t widened = v << off;
        out[byte] |= static_cast<std::uint8_t>(widened & 0xFF);
        if (off + b > 8) out[byte + 1] |= static_cast<std::uint8_t>((widened >> 8) & 0xFF);
        if (off + b > 16) out[byte + 2] |= static_cast<std::uint8_t>((widened >> 16) & 0xFF);
        bitpos += b;
    }
    return out;
}

std::vector<std::uint16_t> unpack_components(std::span<const std::uint8_t> payload,
                                             std::size_t dim, const Modulus& mod) {
    const std::uint32_t b = mod.bits;
    if (payload.size() < packed_payload_bytes(dim, b))
        throw std::invalid_argument("unpack_components: payload too short");
    std::vector<std::uint16_t> out(dim);
    const std::uint32_t mask = (b == 32) ? ~0u : ((1u << b) - 1u);
    std::size_t bitpos = 0;
    for (std::size_t i = 0; i < dim; ++i) {
        std::size_t byte = bitpos >> 3;
        std::uint32_t off = static_cast<std::uint32_t>(bitpos & 7);
        std::uint32_t v = payload[byte];
        if (byte + 1 < payload.size()) v |= static_cast<std::uint32_t>(payload[byte + 1]) << 8;
        if (byte + 2 < payload.size()) v |= static_cast<std::uint32_t>(payload[byte + 2]) << 16;
        out[i] = static_cast<std::uint16_t>((v >> off) & mask);
        if (out[i] >= mod.r)
            throw std::runtime_error("unpack_components: component >= r (corrupt payload)");
        bitpos += b;
    }
    return out;
}

namespace {

constexpr std::array<char, 4> kMagic = {'M', 'C', 'R', 'V'};
constexpr std::uint8_t kVersion = 1;

void put_u16(std::uint8_t* p, std::uint16_t v) {
    p[0] = static_cast<std::uint8_t>(v & 0xFF);
    p[1] = static_cast<std::uint8_t>(v >> 8);
}
void put_u32(std::uint8_t* p, std::uint32_t v) {
    p[0] = static_cast<std::uint8_t>(v & 0xFF);
    p[1] = static_cast<std::uint8_t>((v >> 8) & 0xFF);
    p[2] = static_cast<std::uint8_t>((v >> 16) & 0xFF);
    p[3] = static_cast<std::uint8_t>((v >> 24) & 0xFF);
}
std::uint16_t get_u16(const std::uint8_t* p) {
    return static_cast<std::uint16_t>(p[0] | (p[1] << 8));
}
std::uint32_t get_u32(const std::uint8_t* p) {
    return static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
           (static_cast<std::uint32_t>(p[2]) << 16) | (static_cast<std::uint32_t>(p[3]) << 24);
}

} // namespace

void save_hypervector(const Hypervector& hv, std::ostream& out) {
    std::array<std::uint8_t, 16> header{};
    std::memcpy(header.data(), kMagic.data(), 4);
    header[4] = kVersion;
    // r == 65536 wraps to 0 in the u16 field.
    put_u16(header.data() + 5, static_cast<std::uint16_t>(hv.modulus().r & 0xFFFF));
    header[7] = static_cast<std::uint8_t>(hv.modulus().bits);
    put_u32(header.data() + 8, static_cast<std::uint32_t>(hv.dim()));
    out.write(reinterpret_cast<const char*>(header.data()), header.size());
    auto payload = pack_components(hv.components(), hv.modulus());
    out.write(reinterpret_cast<const char*>(payload.data()),
              static_cast<std::streamsize>(payload.size()));
    if (!out) throw std::runtime_error("save_hypervector: write failed");
}

void save_hypervector(const Hypervector& hv, const std::string& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("save_hypervector: cannot open " + path);
    save_hypervector(hv, f);
}

Hypervector load_hypervector(std::istream& in) {
    std::array<std::uint8_t, 16> header{};
    in.read(reinterpret_cast<char*>(header.data()), header.size());
    if (!in || std::memcmp(header.data(), kMagic.data(), 4) != 0)
        throw std::runtime_error("load_hypervector: bad magic");
    if (header[4] != kVersion)
        throw std::runtime_error("load_hypervector: unsupported version");
    std::uint32_t r = get_u16(header.data() + 5);
    if (r == 0) r = 1u << 16;
    Modulus mod = Modulus::of(r);
    if (header[7] != mod.bits)
        throw std::runtime_error("load_hypervector: inconsistent bits field");
    std::uint32_t dim = get_u32(header.data() + 8);
    if (dim == 0) throw std::runtime_error("load_hypervector: zero dimension");
    std::vector<std::uint8_t> payload(packed_payload_bytes(dim, mod.bits));
    in.read(reinterpret_cast<char*>(payload.data()),
            static_cast<std::streamsize>(payload.size()));
    if (!in) throw std::runtime_error("load_hypervector: truncated payload");
    return Hypervector(mod, unpack_components(payload, dim, mod));
}

Hypervector load_hypervector(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("load_hypervector: cannot open " + path);
    return load_hypervector(f);
}

} // namespace mcr
