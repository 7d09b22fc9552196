#include "mcr/ops.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace mcr {

namespace {

void require_compatible(const Hypervector& a, const Hypervector& b, const char* op) {
    if (a.modulus() != b.modulus() || a.dim() != b.dim())
        throw std::invalid_argument(std::string(op) + ": modulus/dim mismatch");
}

template <typename Reduce>
Hypervector combine(const Hypervector& a, const Hypervector& b, Reduce&& red) {
    Hypervector out(a.modulus(), a.dim());
    const auto& av = a.components();
    const auto& bv = b.components();
    auto ov = out.components();
    for (std::size_t i = 0; i < av.size(); ++i)
        ov[i] = static_cast<std::uint16_t>(red(av[i], bv[i]));
    return out;
}

} // namespace

Hypervector bind(const Hypervector& h, const Hypervector& u) {
    require_compatible(h, u, "bind");
    const Modulus mod = h.modulus();
    return combine(h, u, [&](std::int64_t a, std::int64_t b) { return mod_reduce(a + b, mod); });
}

Hypervector unbind(const Hypervector& c, const Hypervector& u) {
    require_compatible(c, u, "unbind");
    const Modulus mod = c.modulus();
    return combine(c, u, [&](std::int64_t a, std::int64_t b) { return mod_reduce(a - b, mod); });
}

std::uint64_t distance(const Hypervector& h, const Hypervector& u) {
    require_compatible(h, u, "distance");
    const Modulus mod = h.modulus();
    const auto& a = h.components();
    const auto& b = u.components();
    std::uint64_t total = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        total += circular_distance(a[i], b[i], mod);
    return total;
}

Hypervector bind_div(const Hypervector& h, const Hypervector& u) {
    require_compatible(h, u, "bind");
    const Modulus mod = h.modulus();
    return combine(h, u,
                   [&](std::int64_t a, std::int64_t b) { return mod_reduce_div(a + b, mod); });
}

Hypervector unbind_div(const Hypervector& c, const Hypervector& u) {
    require_compatible(c, u, "unbind");
    const Modulus mod = c.modulus();
    return combine(c, u,
                   [&](std::int64_t a, std::int64_t b) { return mod_reduce_div(a - b, mod); });
}

std::uint64_t distance_div(const Hypervector& h, const Hypervector& u) {
    require_compatible(h, u, "distance");
    const Modulus mod = h.modulus();
    const auto& a = h.components();
    const auto& b = u.components();
    std::uint64_t total = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        std::uint32_t d = mod_reduce_div(static_cast<std::int64_t>(a[i]) - b[i], mod);
        std::uint32_t e = mod_reduce_div(static_cast<std::int64_t>(b[i]) - a[i], mod);
        total += std::min(d, e);
    }
    return total;
}

Hypervector permute_cyclic(const Hypervector& h, std::int64_t shift) {
    const std::int64_t d = static_cast<std::int64_t>(h.dim());
    std::int64_t s = shift % d;
    if (s < 0) s += d;
    if (s == 0) return h;
    Hypervector out(h.modulus(), h.dim());
    const auto& src = h.components();
    auto dst = out.components();
    // out[i] = h[(i - s) mod d]  ==  out[(j + s) mod d] = h[j]
    for (std::int64_t j = 0; j < d; ++j) {
        std::int64_t i = j + s;
        if (i >= d) i -= d;
        dst[static_cast<std::size_t>(i)] = src[static_cast<std::size_t>(j)];
    }
    return out;
}

Hypervector permute_block(const Hypervector& h, std::size_t block_size, std::int64_t shift) {
    if (block_size == 0 || h.dim() % block_size != 0)
        throw std::invalid_argument("permute_block: block_size must divide dim");
    const std::int64_t nb = static_cast<std::int64_t>(h.dim() / block_size);
    std::int64_t s = shift % nb;
    if (s < 0) s += nb;
    if (s == 0) return h;
    Hypervector out(h.modulus(), h.dim());
    const auto& src = h.components();
    auto dst = out.components();
    for (std::int64_t j = 0; j < nb; ++j) {
        std::int64_t tgt = j + s;
        if (tgt >= nb) tgt -= nb;
        std::copy_n(src.begin() + static_cast<std::size_t>(j) * block_size, block_size,
                    dst.begin() + static_cast<std::size_t>(tgt) * block_size);
    }
    return out;
}

std::size_t search(const Hypervector& query, std::span<const Hypervector> prototypes) {
    if (prototypes.empty()) throw std::invalid_argument("search: empty prototype list");
    std::size_t best = 0;
    std::uint64_t best_dist = distance(query, prototypes[0]);
    for (std::size_t i = 1; i < prototypes.size(); ++i) {
        std::uint64_t d = distance(query, prototypes[i]);
        if (d < best_dist) {
            best_dist = d;
            best = i;
        }
    }
    return best;
}

// --- CartesianAccumulator ----------------------------------------------------

CartesianAccumulator::CartesianAccumulator(const TrigLUT& lut, std::size_t dim,
                                           FixedPointFormat fmt)
    : lut_(lut), fmt_(fmt), re_(dim, 0), im_(dim, 0), intsum_(dim, 0) {
    fmt_.validate();
    if (dim == 0) throw std::invalid_argument("CartesianAccumulator: dim must be >= 1");
    if (lut_.frac_bits != fmt_.frac_bits)
        throw std::invalid_argument("CartesianAccumulator: LUT/format frac_bits mismatch");
}

CartesianAccumulator CartesianAccumulator::from_raw(const TrigLUT& lut, FixedPointFormat fmt,
                                                    std::vector<std::int32_t> re,
                                                    std::vector<std::int32_t> im,
                                                    std::vector<std::int64_t> intsum,
                                                    std::uint32_t count) {
    if (re.size() != im.size() || re.size() != intsum.size() || re.empty())
        throw std::invalid_argument("CartesianAccumulator::from_raw: size mismatch");
    CartesianAccumulator acc(lut, re.size(), fmt);
    acc.re_ = std::move(re);
    acc.im_ = std::move(im);
    acc.intsum_ = std::move(intsum);
    acc.count_ = count;
    return acc;
}

void CartesianAccumulator::accumulate(const Hypervector& h) {
    if (h.modulus() != lut_.mod || h.dim() != re_.size())
        throw std::invalid_argument("accumulate: modulus/dim mismatch");
    const std::int64_t lo = fmt_.raw_min(), hi = fmt_.raw_max();
    const auto& comp = h.components();
    for (std::size_t i = 0; i < comp.size(); ++i) {
        const std::uint32_t k = comp[i];
        std::int64_t re = static_cast<std::int64_t>(re_[i]) + lut_.cos_raw[k];
        std::int64_t im = static_cast<std::int64_t>(im_[i]) + lut_.sin_raw[k];
        if (re < lo || re > hi) { re = std::clamp(re, lo, hi); ++saturations_; }
        if (im < lo || im > hi) { im = std::clamp(im, lo, hi); ++saturations_; }
        re_[i] = static_cast<std::int32_t>(re);
        im_[i] = static_cast<std::int32_t>(im);
        intsum_[i] += k;
    }
    ++count_;
}

namespace {

// Eq.-style integer mean with round-half-away; intsum >= 0 always.
std::uint32_t fallback_component(std::int64_t intsum, std::uint32_t count, const Modulus& mod) {
    const std::int64_t mean_rounded = (2 * intsum + count) / (2 * static_cast<std::int64_t>(count));
    return mod_reduce(mean_rounded, mod);
}

inline bool near_zero(std::int32_t re, std::int32_t im) {
    return std::abs(static_cast<std::int64_t>(re)) < FixedPointFormat::kZeroEpsRaw &&
           std::abs(static_cast<std::int64_t>(im)) < FixedPointFormat::kZeroEpsRaw;
}

} // namespace

Hypervector normalize_reference(const CartesianAccumulator& acc, NormalizeStats* stats) {
    if (acc.count() == 0) throw std::logic_error("normalize: empty accumulator");
    const Modulus mod = acc.modulus();
    const double scale = mod.r / (2.0 * std::numbers::pi);
    Hypervector out(mod, acc.dim());
    auto dst = out.components();
    for (std::size_t i = 0; i < acc.dim(); ++i) {
        const std::int32_t re = acc.re_raw(i), im = acc.im_raw(i);
        if (near_zero(re, im)) {
            dst[i] = static_cast<std::uint16_t>(fallback_component(acc.int_sum(i), acc.count(), mod));
            if (stats) ++stats->fallback_components;
            continue;
        }
        double theta = std::atan2(static_cast<double>(im), static_cast<double>(re));
        if (theta < 0) theta += 2.0 * std::numbers::pi;
        dst[i] = static_cast<std::uint16_t>(mod_reduce(round_half_away(scale * theta), mod));
    }
    return out;
}

Hypervector normalize_wta(const CartesianAccumulator& acc, NormalizeStats* stats) {
    if (acc.count() == 0) throw std::logic_error("normalize: empty accumulator");
    const Modulus mod = acc.modulus();
    if (!mod.power_of_two || mod.r < 4)
        throw std::invalid_argument("normalize_wta: requires power-of-two r >= 4");
    const TrigLUT& lut = acc.lut();
    const std::uint32_t q = mod.r / 4;  // candidates per quadrant minus one
    Hypervector out(mod, acc.dim());
    auto dst = out.components();
    for (std::size_t i = 0; i < acc.dim(); ++i) {
        const std::int64_t re = acc.re_raw(i), im = acc.im_raw(i);
        if (near_zero(acc.re_raw(i), acc.im_raw(i))) {
            dst[i] = static_cast<std::uint16_t>(fallback_component(acc.int_sum(i), acc.count(), mod));
            if (stats) ++stats->fallback_components;
            continue;
        }
        // Quadrant from the sign bits; candidates listed in ascending
        // canonical k so strict-greater replacement keeps the lowest k
        // on ties. Quadrant 3 wraps: its top boundary k == r maps to 0.
        std::uint32_t first;
        bool wrap = false;
        if (re >= 0 && im >= 0) first = 0;
        else if (re < 0 && im >= 0) first = q;
        else if (re < 0) first = 2 * q;
        else { first = 3 * q; wrap = true; }

        std::uint32_t best_k = wrap ? 0u : first;
        std::int64_t best_ip;
        bool tied = false;
        {
            const std::uint32_t k0 = best_k;
            best_ip = re * lut.cos_raw[k0] + im * lut.sin_raw[k0];
        }
        for (std::uint32_t step = 1; step <= q; ++step) {
            const std::uint32_t k = wrap ? (first + step - 1) : (first + step);
            const std::int64_t ip = re * lut.cos_raw[k] + im * lut.sin_raw[k];
            if (ip > best_ip) {
                best_ip = ip;
                best_k = k;
                tied = false;
            } else if (ip == best_ip) {
                tied = true;
            }
        }
        if (tied && stats) ++stats->tie_components;
        dst[i] = static_cast<std::uint16_t>(best_k);
    }
    return out;
}

} // namespace mcr
