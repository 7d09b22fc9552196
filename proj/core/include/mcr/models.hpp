#pragma once

#include <complex>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "mcr/hypervector.hpp"
#include "mcr/ops.hpp"
#include "mcr/packed.hpp"
#include "mcr/random.hpp"

namespace mcr::models {

enum class Family { MCR, BSC, MAP_I, MAP_C, FHRR };

// Identifies a concrete model instance: family, per-component storage
// bits, ring size for MCR, and dimensionality.
struct ModelDescriptor {
    Family family = Family::BSC;
    int bits = 1;                 // storage bits per component
    std::uint32_t modulus_r = 0;  // MCR only
    std::size_t dim = 0;

    static ModelDescriptor mcr(std::uint32_t r, std::size_t dim);
    static ModelDescriptor bsc(std::size_t dim);
    static ModelDescriptor map_i(int bits, std::size_t dim);
    static ModelDescriptor map_c32(std::size_t dim);
    static ModelDescriptor fhrr(std::size_t dim);

    std::string name() const;  // e.g. "mcr16", "bsc", "mapi4", "mapc32", "fhrr"
    bool operator==(const ModelDescriptor&) const = default;
};

// Parses tokens like "mcr16", "bsc", "mapi4", "mapc32", "fhrr".
ModelDescriptor parse_model_token(const std::string& token, std::size_t dim);

using BitVec = std::vector<std::uint8_t>;    // BSC, values in {0,1}
using IntVec = std::vector<std::int32_t>;    // MAP-I (bipolar base or quantized)
using RealVec = std::vector<double>;         // MAP-C values / FHRR phases
using CplxVec = std::vector<std::complex<double>>;

struct GenericHV {
    ModelDescriptor desc;
    std::variant<BitVec, IntVec, RealVec, Hypervector, PackedHypervector> payload;
};

// Full-precision bundling state, normalized once at the end.
struct SuperposeState {
    ModelDescriptor desc;
    std::uint32_t count = 0;
    std::variant<std::vector<std::int64_t>,  // BSC one-counts / MAP-I sums
                 RealVec,                    // MAP-C sums
                 CplxVec,                    // FHRR complex sums
                 CartesianAccumulator>       // MCR
        state;
};

// One model behind a uniform interface so the capacity and
// classification harnesses can sweep families without special cases.
// All distances follow the argmin contract: lower = more similar,
// distance(x, x) == 0, symmetric.
class VsaModel {
public:
    virtual ~VsaModel() = default;

    const ModelDescriptor& descriptor() const { return desc_; }

    virtual GenericHV random(RandomSource& rng) const = 0;
    virtual GenericHV bind(const GenericHV& a, const GenericHV& b) const = 0;
    virtual GenericHV unbind(const GenericHV& a, const GenericHV& b) const = 0;
    virtual double distance(const GenericHV& a, const GenericHV& b) const = 0;
    virtual GenericHV permute(const GenericHV& h, std::int64_t shift) const = 0;

    virtual SuperposeState superpose_begin() const = 0;
    virtual void superpose_add(SuperposeState& st, const GenericHV& h) const = 0;
    // tie_rng resolves the BSC even-count majority ties; other families
    // ignore it.
    virtual GenericHV superpose_finish(const SuperposeState& st, RandomSource& tie_rng) const = 0;

    // -- classifier hooks ----------------------------------------------

    // Thermometer value vector for quantization level ell of L: the
    // first round(D*ell/(L-1)) components carry the family's high
    // symbol, the rest the low symbol.
    virtual GenericHV thermometer_level(std::size_t level, std::size_t levels) const = 0;

    // Unit-magnitude embedding used for high-precision prototypes
    // (bipolar reals on the real axis for BSC/MAP, phasors for
    // FHRR/MCR).
    virtual void embed(const GenericHV& h, std::span<std::complex<double>> out) const = 0;

    // Model-domain discretization of a high-precision prototype (the
    // per-epoch snapshot rule and the final normalization are the same
    // mapping).
    virtual GenericHV discretize(std::span<const std::complex<double>> proto) const = 0;

protected:
    explicit VsaModel(ModelDescriptor d) : desc_(std::move(d)) {}
    ModelDescriptor desc_;
};

// MCR execution path selection: Reference uses unpacked components with
// explicit modular reduction and atan2 normalization; Packed uses the
// bit-packed SWAR kernels and WTA normalization.
enum class McrPath { Reference, Packed };

std::unique_ptr<VsaModel> make_model(const ModelDescriptor& desc);
std::unique_ptr<VsaModel> make_mcr_model(std::uint32_t r, std::size_t dim, McrPath path);

} // namespace mcr::models
