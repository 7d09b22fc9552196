#include "mcr/models.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace mcr::models {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

int bits_for_modulus(std::uint32_t r) { return static_cast<int>(Modulus::of(r).bits); }

std::size_t thermometer_high_count(std::size_t level, std::size_t levels, std::size_t dim) {
    if (levels < 2) throw std::invalid_argument("thermometer: levels must be >= 2");
    if (level >= levels) throw std::invalid_argument("thermometer: level out of range");
    // round(D * level / (L-1)); keeps the extremes exact and the prefix
    // length monotone in the level.
    return static_cast<std::size_t>(
        (2 * level * dim + (levels - 1)) / (2 * (levels - 1)));
}

void check_desc(const GenericHV& a, const GenericHV& b, const char* op) {
    if (!(a.desc == b.desc)) throw std::invalid_argument(std::string(op) + ": descriptor mismatch");
}

template <typename T>
std::vector<T> cyclic_shift(const std::vector<T>& v, std::int64_t shift) {
    const std::int64_t d = static_cast<std::int64_t>(v.size());
    std::int64_t s = shift % d;
    if (s < 0) s += d;
    if (s == 0) return v;
    std::vector<T> out(v.size());
    for (std::int64_t j = 0; j < d; ++j) {
        std::int64_t i = j + s;
        if (i >= d) i -= d;
        out[static_cast<std::size_t>(i)] = v[static_cast<std::size_t>(j)];
    }
    return out;
}

double angular_component_distance(double a, double b) {
    double d = std::fabs(a - b);
    d = std::fmod(d, kTwoPi);
    return std::min(d, kTwoPi - d);
}

// Cosine distance with the zero-norm convention: a zero vector is
// treated as orthogonal to everything (distance 1).
double cosine_distance(std::span<const double> a, std::span<const double> b) {
    double dot = 0, na = 0, nb = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        dot += a[i] * b[i];
        na += a[i] * a[i];
        nb += b[i] * b[i];
    }
    if (na == 0.0 || nb == 0.0) return 1.0;
    return 1.0 - dot / (std::sqrt(na) * std::sqrt(nb));
}

// --- BSC ---------------------------------------------------------------

class BscModel final : public VsaModel {
public:
    explicit BscModel(ModelDescriptor d) : VsaModel(std::move(d)) {}

    GenericHV random(RandomSource& rng) const override {
        BitVec v(desc_.dim);
        for (auto& b : v) b = static_cast<std::uint8_t>(rng.next_u64() & 1ull);
        return {desc_, std::move(v)};
    }

    GenericHV bind(const GenericHV& a, const GenericHV& b) const override {
        check_desc(a, b, "bind");
        const auto& av = std::get<BitVec>(a.payload);
        const auto& bv = std::get<BitVec>(b.payload);
        BitVec out(av.size());
        for (std::size_t i = 0; i < av.size(); ++i) out[i] = av[i] ^ bv[i];
        return {desc_, std::move(out)};
    }

    GenericHV unbind(const GenericHV& a, const GenericHV& b) const override {
        return bind(a, b);  // XOR is its own inverse
    }

    double distance(const GenericHV& a, const GenericHV& b) const override {
        check_desc(a, b, "distance");
        const auto& av = std::get<BitVec>(a.payload);
        const auto& bv = std::get<BitVec>(b.payload);
        std::uint64_t h = 0;
        for (std::size_t i = 0; i < av.size(); ++i) h += av[i] ^ bv[i];
        return static_cast<double>(h);
    }

    GenericHV permute(const GenericHV& h, std::int64_t shift) const override {
        return {desc_, cyclic_shift(std::get<BitVec>(h.payload), shift)};
    }

    SuperposeState superpose_begin() const override {
        return {desc_, 0, std::vector<std::int64_t>(desc_.dim, 0)};
    }

    void superpose_add(SuperposeState& st, const GenericHV& h) const override {
        auto& counts = std::get<std::vector<std::int64_t>>(st.state);
        const auto& v = std::get<BitVec>(h.payload);
        for (std::size_t i = 0; i < v.size(); ++i) counts[i] += v[i];
        ++st.count;
    }

    GenericHV superpose_finish(const SuperposeState& st, RandomSource& tie_rng) const override {
        if (st.count == 0) throw std::invalid_argument("superpose: empty");
        const auto& counts = std::get<std::vector<std::int64_t>>(st.state);
        BitVec out(counts.size());
        const std::int64_t m = st.count;
        for (std::size_t i = 0; i < counts.size(); ++i) {
            const std::int64_t twice = 2 * counts[i];
            if (twice > m) out[i] = 1;
            else if (twice < m) out[i] = 0;
            else out[i] = static_cast<std::uint8_t>(tie_rng.next_bit());
        }
        return {desc_, std::move(out)};
    }

    GenericHV thermometer_level(std::size_t level, std::size_t levels) const override {
        const std::size_t high = thermometer_high_count(level, levels, desc_.dim);
        BitVec v(desc_.dim, 0);
        std::fill(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(high), std::uint8_t{1});
        return {desc_, std::move(v)};
    }

    void embed(const GenericHV& h, std::span<std::complex<double>> out) const override {
        const auto& v = std::get<BitVec>(h.payload);
        for (std::size_t i = 0; i < v.size(); ++i)
            out[i] = {v[i] ? 1.0 : -1.0, 0.0};
    }

    GenericHV discretize(std::span<const std::complex<double>> proto) const override {
        BitVec out(proto.size());
        for (std::size_t i = 0; i < proto.size(); ++i)
            out[i] = proto[i].real() >= 0.0 ? 1 : 0;  // sign rule, zero -> 1
        return {desc_, std::move(out)};
    }
};

// --- MAP (integer and 32-bit float variants) ----------------------------

class MapModel final : public VsaModel {
public:
    explicit MapModel(ModelDescriptor d) : VsaModel(std::move(d)) {}

    bool quantized() const { return desc_.family == Family::MAP_I; }

    GenericHV random(RandomSource& rng) const override {
        IntVec v(desc_.dim);
        for (auto& x : v) x = (rng.next_u64() & 1ull) ? 1 : -1;
        return {desc_, std::move(v)};
    }

    GenericHV bind(const GenericHV& a, const GenericHV& b) const override {
        check_desc(a, b, "bind");
        const auto& av = std::get<IntVec>(a.payload);
        const auto& bv = std::get<IntVec>(b.payload);
        IntVec out(av.size());
        for (std::size_t i = 0; i < av.size(); ++i) out[i] = av[i] * bv[i];
        return {desc_, std::move(out)};
    }

    GenericHV unbind(const GenericHV& a, const GenericHV& b) const override {
        return bind(a, b);  // bipolar multiply is self-inverse
    }

    double distance(const GenericHV& a, const GenericHV& b) const override {
        check_desc(a, b, "distance");
        std::vector<double> av = to_double(a), bv = to_double(b);
        return cosine_distance(av, bv);
    }

    GenericHV permute(const GenericHV& h, std::int64_t shift) const override {
        if (std::holds_alternative<RealVec>(h.payload))
            return {desc_, cyclic_shift(std::get<RealVec>(h.payload), shift)};
        return {desc_, cyclic_shift(std::get<IntVec>(h.payload), shift)};
    }

    SuperposeState superpose_begin() const override {
        if (quantized()) return {desc_, 0, std::vector<std::int64_t>(desc_.dim, 0)};
        return {desc_, 0, RealVec(desc_.dim, 0.0)};
    }

    void superpose_add(SuperposeState& st, const GenericHV& h) const override {
        const auto& v = std::get<IntVec>(h.payload);
        if (quantized()) {
            auto& sums = std::get<std::vector<std::int64_t>>(st.state);
            for (std::size_t i = 0; i < v.size(); ++i) sums[i] += v[i];
        } else {
            auto& sums = std::get<RealVec>(st.state);
            for (std::size_t i = 0; i < v.size(); ++i) sums[i] += v[i];
        }
        ++st.count;
    }

    GenericHV superpose_finish(const SuperposeState& st, RandomSource&) const override {
        if (st.count == 0) throw std::invalid_argument("superpose: empty");
        if (!quantized()) {
            // MAP-C32 keeps the unconstrained sums.
            return {desc_, std::get<RealVec>(st.state)};
        }
        const auto& sums = std::get<std::vector<std::int64_t>>(st.state);
        RealVec vals(sums.begin(), sums.end());
        return {desc_, rescale_quantize(vals, desc_.bits)};
    }

    GenericHV thermometer_level(std::size_t level, std::size_t levels) const override {
        const std::size_t high = thermometer_high_count(level, levels, desc_.dim);
        IntVec v(desc_.dim, -1);
        std::fill(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(high), 1);
        return {desc_, std::move(v)};
    }

    void embed(const GenericHV& h, std::span<std::complex<double>> out) const override {
        if (std::holds_alternative<IntVec>(h.payload)) {
            const auto& v = std::get<IntVec>(h.payload);
            for (std::size_t i = 0; i < v.size(); ++i) out[i] = {static_cast<double>(v[i]), 0.0};
        } else {
            const auto& v = std::get<RealVec>(h.payload);
            for (std::size_t i = 0; i < v.size(); ++i) out[i] = {v[i], 0.0};
        }
    }

    GenericHV discretize(std::span<const std::complex<double>> proto) const override {
        RealVec vals(proto.size());
        for (std::size_t i = 0; i < proto.size(); ++i) vals[i] = proto[i].real();
        if (!quantized()) return {desc_, std::move(vals)};
        return {desc_, rescale_quantize(vals, desc_.bits)};
    }

private:
    std::vector<double> to_double(const GenericHV& h) const {
        if (std::holds_alternative<IntVec>(h.payload)) {
            const auto& v = std::get<IntVec>(h.payload);
            return std::vector<double>(v.begin(), v.end());
        }
        return std::get<RealVec>(h.payload);
    }

    // Rescales the observed value distribution onto the b-bit interval
    // [-2^(b-1), 2^(b-1)-1] and quantizes uniformly. Monotone in the
    // input; a constant vector maps to the midlevel.
    static IntVec rescale_quantize(const RealVec& vals, int bits) {
        const double qmin = -std::ldexp(1.0, bits - 1);
        const double qmax = std::ldexp(1.0, bits - 1) - 1.0;
        const auto [mn_it, mx_it] = std::minmax_element(vals.begin(), vals.end());
        const double mn = *mn_it, mx = *mx_it;
        IntVec out(vals.size());
        if (mx == mn) {
            const std::int32_t mid =
                static_cast<std::int32_t>(round_half_away(0.5 * (qmin + qmax)));
            std::fill(out.begin(), out.end(), mid);
            return out;
        }
        const double scale = (qmax - qmin) / (mx - mn);
        for (std::size_t i = 0; i < vals.size(); ++i) {
            const double t = qmin + (vals[i] - mn) * scale;
            out[i] = static_cast<std::int32_t>(round_half_away(t));
        }
        return out;
    }
};

// --- FHRR ----------------------------------------------------------------

class FhrrModel final : public VsaModel {
public:
    explicit FhrrModel(ModelDescriptor d) : VsaModel(std::move(d)) {}

    GenericHV random(RandomSource& rng) const override {
        RealVec v(desc_.dim);
        for (auto& p : v) p = rng.uniform_double() * kTwoPi;
        return {desc_, std::move(v)};
    }

    GenericHV bind(const GenericHV& a, const GenericHV& b) const override {
        check_desc(a, b, "bind");
        const auto& av = std::get<RealVec>(a.payload);
        const auto& bv = std::get<RealVec>(b.payload);
        RealVec out(av.size());
        for (std::size_t i = 0; i < av.size(); ++i) out[i] = wrap_phase(av[i] + bv[i]);
        return {desc_, std::move(out)};
    }

    GenericHV unbind(const GenericHV& a, const GenericHV& b) const override {
        check_desc(a, b, "unbind");
        const auto& av = std::get<RealVec>(a.payload);
        const auto& bv = std::get<RealVec>(b.payload);
        RealVec out(av.size());
        for (std::size_t i = 0; i < av.size(); ++i) out[i] = wrap_phase(av[i] - bv[i]);
        return {desc_, std::move(out)};
    }

    double distance(const GenericHV& a, const GenericHV& b) const override {
        check_desc(a, b, "distance");
        const auto& av = std::get<RealVec>(a.payload);
        const auto& bv = std::get<RealVec>(b.payload);
        double total = 0;
        for (std::size_t i = 0; i < av.size(); ++i)
            total += angular_component_distance(av[i], bv[i]);
        return total / static_cast<double>(av.size());
    }

    GenericHV permute(const GenericHV& h, std::int64_t shift) const override {
        return {desc_, cyclic_shift(std::get<RealVec>(h.payload), shift)};
    }

    SuperposeState superpose_begin() const override {
        return {desc_, 0, CplxVec(desc_.dim, {0.0, 0.0})};
    }

    void superpose_add(SuperposeState& st, const GenericHV& h) const override {
        auto& sums = std::get<CplxVec>(st.state);
        const auto& v = std::get<RealVec>(h.payload);
        for (std::size_t i = 0; i < v.size(); ++i)
            sums[i] += std::complex<double>(std::cos(v[i]), std::sin(v[i]));
        ++st.count;
    }

    GenericHV superpose_finish(const SuperposeState& st, RandomSource&) const override {
        if (st.count == 0) throw std::invalid_argument("superpose: empty");
        const auto& sums = std::get<CplxVec>(st.state);
        RealVec out(sums.size());
        for (std::size_t i = 0; i < sums.size(); ++i) out[i] = phase_of(sums[i]);
        return {desc_, std::move(out)};
    }

    GenericHV thermometer_level(std::size_t level, std::size_t levels) const override {
        const std::size_t high = thermometer_high_count(level, levels, desc_.dim);
        RealVec v(desc_.dim, 0.0);
        std::fill(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(high), std::numbers::pi);
        return {desc_, std::move(v)};
    }

    void embed(const GenericHV& h, std::span<std::complex<double>> out) const override {
        const auto& v = std::get<RealVec>(h.payload);
        for (std::size_t i = 0; i < v.size(); ++i) out[i] = {std::cos(v[i]), std::sin(v[i])};
    }

    GenericHV discretize(std::span<const std::complex<double>> proto) const override {
        RealVec out(proto.size());
        for (std::size_t i = 0; i < proto.size(); ++i) out[i] = phase_of(proto[i]);
        return {desc_, std::move(out)};
    }

private:
    static double wrap_phase(double p) {
        p = std::fmod(p, kTwoPi);
        return p < 0 ? p + kTwoPi : p;
    }
    static double phase_of(std::complex<double> z) {
        if (z.real() == 0.0 && z.imag() == 0.0) return 0.0;
        return wrap_phase(std::atan2(z.imag(), z.real()));
    }
};

// --- MCR (delegates to the core algebra) --------------------------------

class McrModel final : public VsaModel {
public:
    McrModel(ModelDescriptor d, McrPath path)
        : VsaModel(std::move(d)),
          mod_(Modulus::of(desc_.modulus_r)),
          lut_(TrigLUT::of(mod_)),
          path_(path) {
        if (path_ == McrPath::Packed && !PackedHypervector::supports(mod_))
            throw std::invalid_argument("mcr: packed path requires power-of-two r with b in {1,2,4,8,16}");
        if (path_ == McrPath::Packed && mod_.r < 4)
            throw std::invalid_argument("mcr: packed path (WTA) requires r >= 4");
    }

    GenericHV random(RandomSource& rng) const override {
        Hypervector hv = random_hypervector(mod_, desc_.dim, rng);
        return wrap(std::move(hv));
    }

    GenericHV bind(const GenericHV& a, const GenericHV& b) const override {
        check_desc(a, b, "bind");
        if (path_ == McrPath::Packed)
            return {desc_, packed_bind(std::get<PackedHypervector>(a.payload),
                                       std::get<PackedHypervector>(b.payload))};
        return {desc_, bind_div(std::get<Hypervector>(a.payload),
                                std::get<Hypervector>(b.payload))};
    }

    GenericHV unbind(const GenericHV& a, const GenericHV& b) const override {
        check_desc(a, b, "unbind");
        if (path_ == McrPath::Packed)
            return {desc_, packed_unbind(std::get<PackedHypervector>(a.payload),
                                         std::get<PackedHypervector>(b.payload))};
        return {desc_, unbind_div(std::get<Hypervector>(a.payload),
                                  std::get<Hypervector>(b.payload))};
    }

    double distance(const GenericHV& a, const GenericHV& b) const override {
        check_desc(a, b, "distance");
        if (path_ == McrPath::Packed)
            return static_cast<double>(packed_distance(std::get<PackedHypervector>(a.payload),
                                                       std::get<PackedHypervector>(b.payload)));
        return static_cast<double>(distance_div(std::get<Hypervector>(a.payload),
                                                std::get<Hypervector>(b.payload)));
    }

    GenericHV permute(const GenericHV& h, std::int64_t shift) const override {
        return wrap(permute_cyclic(as_unpacked(h), shift));
    }

    SuperposeState superpose_begin() const override {
        // Wide split: software experiments accumulate long chains in
        // full precision and normalize once at the end.
        return {desc_, 0,
                CartesianAccumulator(lut_, desc_.dim, FixedPointFormat::wide())};
    }

    void superpose_add(SuperposeState& st, const GenericHV& h) const override {
        auto& acc = std::get<CartesianAccumulator>(st.state);
        if (path_ == McrPath::Packed) {
            acc.accumulate(std::get<PackedHypervector>(h.payload).unpack());
        } else {
            acc.accumulate(std::get<Hypervector>(h.payload));
        }
        ++st.count;
    }

    GenericHV superpose_finish(const SuperposeState& st, RandomSource&) const override {
        const auto& acc = std::get<CartesianAccumulator>(st.state);
        if (path_ == McrPath::Packed) return wrap(normalize_wta(acc));
        return wrap(normalize_reference(acc));
    }

    GenericHV thermometer_level(std::size_t level, std::size_t levels) const override {
        const std::size_t high = thermometer_high_count(level, levels, desc_.dim);
        std::vector<std::uint16_t> comp(desc_.dim, 0);
        std::fill(comp.begin(), comp.begin() + static_cast<std::ptrdiff_t>(high),
                  static_cast<std::uint16_t>(mod_.r / 2));
        return wrap(Hypervector(mod_, std::move(comp)));
    }

    void embed(const GenericHV& h, std::span<std::complex<double>> out) const override {
        const Hypervector hv = as_unpacked(h);
        for (std::size_t i = 0; i < hv.dim(); ++i) {
            const double phase = kTwoPi * hv[i] / mod_.r;
            out[i] = {std::cos(phase), std::sin(phase)};
        }
    }

    GenericHV discretize(std::span<const std::complex<double>> proto) const override {
        const double scale = mod_.r / kTwoPi;
        std::vector<std::uint16_t> comp(proto.size());
        for (std::size_t i = 0; i < proto.size(); ++i) {
            const auto& z = proto[i];
            if (z.real() == 0.0 && z.imag() == 0.0) {
                comp[i] = 0;  // undefined phase; arbitrary fixed direction
                continue;
            }
            double theta = std::atan2(z.imag(), z.real());
            if (theta < 0) theta += kTwoPi;
            comp[i] = static_cast<std::uint16_t>(mod_reduce(round_half_away(scale * theta), mod_));
        }
        return wrap(Hypervector(mod_, std::move(comp)));
    }

    const Modulus& ring() const { return mod_; }
    const TrigLUT& lut() const { return lut_; }
    McrPath path() const { return path_; }

private:
    GenericHV wrap(Hypervector hv) const {
        if (path_ == McrPath::Packed) return {desc_, PackedHypervector(hv)};
        return {desc_, std::move(hv)};
    }
    Hypervector as_unpacked(const GenericHV& h) const {
        if (std::holds_alternative<PackedHypervector>(h.payload))
            return std::get<PackedHypervector>(h.payload).unpack();
        return std::get<Hypervector>(h.payload);
    }

    Modulus mod_;
    TrigLUT lut_;
    McrPath path_;
};

} // namespace

ModelDescriptor ModelDescriptor::mcr(std::uint32_t r, std::size_t dim) {
    return {Family::MCR, bits_for_modulus(r), r, dim};
}
ModelDescriptor ModelDescriptor::bsc(std::size_t dim) { return {Family::BSC, 1, 0, dim}; }
ModelDescriptor ModelDescriptor::map_i(int bits, std::size_t dim) {
    if (bits < 2 || bits > 32) throw std::invalid_argument("map_i: bits out of range");
    return {Family::MAP_I, bits, 0, dim};
}
ModelDescriptor ModelDescriptor::map_c32(std::size_t dim) { return {Family::MAP_C, 32, 0, dim}; }
ModelDescriptor ModelDescriptor::fhrr(std::size_t dim) { return {Family::FHRR, 128, 0, dim}; }

std::string ModelDescriptor::name() const {
    switch (family) {
        case Family::MCR: return "mcr" + std::to_string(modulus_r);
        case Family::BSC: return "bsc";
        case Family::MAP_I: return "mapi" + std::to_string(bits);
        case Family::MAP_C: return "mapc32";
        case Family::FHRR: return "fhrr";
    }
    return "?";
}

ModelDescriptor parse_model_token(const std::string& token, std::size_t dim) {
    auto numeric_suffix = [](const std::string& s, std::size_t at) -> long {
        if (at >= s.size()) return -1;
        for (std::size_t i = at; i < s.size(); ++i)
            if (!std::isdigit(static_cast<unsigned char>(s[i]))) return -1;
        return std::stol(s.substr(at));
    };
    if (token == "bsc") return ModelDescriptor::bsc(dim);
    if (token == "fhrr") return ModelDescriptor::fhrr(dim);
    if (token == "mapc32") return ModelDescriptor::map_c32(dim);
    if (token.rfind("mapi", 0) == 0) {
        long b = numeric_suffix(token, 4);
        if (b < 2 || b > 32) throw std::invalid_argument("bad model token: " + token);
        return ModelDescriptor::map_i(static_cast<int>(b), dim);
    }
    if (token.rfind("mcr", 0) == 0) {
        long r = numeric_suffix(token, 3);
        if (r < 2 || r > 65536) throw std::invalid_argument("bad model token: " + token);
        return ModelDescriptor::mcr(static_cast<std::uint32_t>(r), dim);
    }
    throw std::invalid_argument("bad model token: " + token);
}

std::unique_ptr<VsaModel> make_model(const ModelDescriptor& desc) {
    if (desc.dim == 0) throw std::invalid_argument("make_model: dim must be >= 1");
    switch (desc.family) {
        case Family::MCR: return std::make_unique<McrModel>(desc, McrPath::Reference);
        case Family::BSC: return std::make_unique<BscModel>(desc);
        case Family::MAP_I:
        case Family::MAP_C: return std::make_unique<MapModel>(desc);
        case Family::FHRR: return std::make_unique<FhrrModel>(desc);
    }
    throw std::invalid_argument("make_model: unknown family");
}

std::unique_ptr<VsaModel> make_mcr_model(std::uint32_t r, std::size_t dim, McrPath path) {
    return std::make_unique<McrModel>(ModelDescriptor::mcr(r, dim), path);
}

} // namespace mcr::models
