#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "mcr/modulus.hpp"
#include "mcr/random.hpp"

namespace mcr {

// Dense hypervector over Z_r. Components are held unpacked (one uint16
// each) for fast arithmetic; bit-packed storage is used on disk and in
// the packed kernels (see packed.hpp). Immutable by convention after
// construction: operations return new vectors.
class Hypervector {
public:
    Hypervector() = default;
    Hypervector(Modulus mod, std::size_t dim)
        : mod_(mod), comp_(dim, 0) {
        if (dim == 0) throw std::invalid_argument("Hypervector: dim must be >= 1");
    }
    Hypervector(Modulus mod, std::vector<std::uint16_t> components)
        : mod_(mod), comp_(std::move(components)) {
        if (comp_.empty()) throw std::invalid_argument("Hypervector: dim must be >= 1");
        for (auto c : comp_)
            if (c >= mod_.r) throw std::invalid_argument("Hypervector: component out of range");
    }

    const Modulus& modulus() const { return mod_; }
    std::size_t dim() const { return comp_.size(); }

    std::uint16_t operator[](std::size_t i) const { return comp_[i]; }
    std::uint16_t& operator[](std::size_t i) { return comp_[i]; }

    std::span<const std::uint16_t> components() const { return comp_; }
    std::span<std::uint16_t> components() { return comp_; }

    bool operator==(const Hypervector&) const = default;

private:
    Modulus mod_;
    std::vector<std::uint16_t> comp_;
};

// Each component i.i.d. uniform over [0, r-1]; deterministic given the
// rng state.
Hypervector random_hypervector(const Modulus& mod, std::size_t dim, RandomSource& rng);

// --- bit packing ---------------------------------------------------------
// Components are packed at b bits each into a little-endian bit stream:
// component i occupies stream bits [i*b, (i+1)*b), bit j of the stream is
// bit (j % 8) of byte (j / 8). Payload size is exactly ceil(D*b/8) bytes.

std::size_t packed_payload_bytes(std::size_t dim, std::uint32_t bits);
std::vector<std::uint8_t> pack_components(std::span<const std::uint16_t> components,
                                          const Modulus& mod);
std::vector<std::uint16_t> unpack_components(std::span<const std::uint8_t> payload,
                                             std::size_t dim, const Modulus& mod);

// --- file format ----------------------------------------------------------
// 16-byte header, little-endian fields:
//   bytes 0-3   magic "MCRV"
//   byte  4     version (1)
//   bytes 5-6   r (u16; value 0 encodes r = 65536)
//   byte  7     b bits per component
//   bytes 8-11  D (u32)
//   bytes 12-15 reserved (zero)
// followed by the packed payload.

void save_hypervector(const Hypervector& hv, std::ostream& out);
void save_hypervector(const Hypervector& hv, const std::string& path);
Hypervector load_hypervector(std::istream& in);
Hypervector load_hypervector(const std::string& path);

} // namespace mcr
