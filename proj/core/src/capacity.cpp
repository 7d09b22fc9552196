#include "mcr/capacity.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "mcr/parallel.hpp"

namespace mcr::capacity {

Codebook make_codebook(const models::VsaModel& model, std::size_t d, RandomSource& rng) {
    if (d < 2) throw std::invalid_argument("make_codebook: d must be >= 2");
    Codebook cb;
    cb.desc = model.descriptor();
    cb.vectors.reserve(d);
    for (std::size_t i = 0; i < d; ++i) cb.vectors.push_back(model.random(rng));
    return cb;
}

models::SuperposeState encode_sequence(const models::VsaModel& model, const Codebook& cb,
                                       std::span<const std::size_t> symbols) {
    if (symbols.empty()) throw std::invalid_argument("encode_sequence: m must be >= 1");
    const std::size_t m = symbols.size();
    auto st = model.superpose_begin();
    for (std::size_t j = 0; j < m; ++j) {
        if (symbols[j] >= cb.size())
            throw std::invalid_argument("encode_sequence: symbol index out of range");
        // position j (1-based j+1) carries rho^(m-(j+1))
        const std::int64_t power = static_cast<std::int64_t>(m - 1 - j);
        model.superpose_add(st, model.permute(cb.vectors[symbols[j]], power));
    }
    return st;
}

std::vector<std::size_t> decode_sequence(const models::VsaModel& model, const Codebook& cb,
                                         const models::GenericHV& composite, std::size_t m) {
    if (m == 0) throw std::invalid_argument("decode_sequence: m must be >= 1");
    std::vector<std::size_t> out(m);
    for (std::size_t j = 0; j < m; ++j) {
        const std::int64_t power = static_cast<std::int64_t>(m - 1 - j);
        const models::GenericHV aligned = model.permute(composite, -power);
        std::size_t best = 0;
        double best_dist = model.distance(cb.vectors[0], aligned);
        for (std::size_t c = 1; c < cb.size(); ++c) {
            const double dist = model.distance(cb.vectors[c], aligned);
            if (dist < best_dist) {
                best_dist = dist;
                best = c;
            }
        }
        out[j] = best;
    }
    return out;
}

InfoMetrics information_metrics(double a, std::size_t d, std::size_t m, std::size_t dim,
                                int bits) {
    if (d < 2) throw std::invalid_argument("information_metrics: d must be >= 2");
    if (a < 0.0 || a > 1.0) throw std::invalid_argument("information_metrics: a out of [0,1]");
    InfoMetrics im;
    const double dd = static_cast<double>(d);
    const double chance = 1.0 / dd;
    if (a <= chance) {
        im.i_symb = 0.0;
        im.clamped = a < chance;
    } else {
        double v = a * std::log2(dd * a);
        if (a < 1.0) v += (1.0 - a) * std::log2(dd / (dd - 1.0) * (1.0 - a));
        im.i_symb = v;
    }
    im.i_tot = static_cast<double>(m) * im.i_symb;
    im.i_dim = im.i_tot / static_cast<double>(dim);
    im.i_bit = im.i_tot / (static_cast<double>(dim) * bits);
    return im;
}

SweepConfig SweepConfig::desk_scale() {
    SweepConfig c;
    c.model_tokens = {"mcr16", "mcr8", "mcr4", "bsc", "mapi2", "mapi3",
                      "mapi4", "mapi5", "mapi32", "mapc32", "fhrr"};
    c.d_values = {15};
    c.m_values = {10, 50, 100, 200, 400};
    c.dim = 500;
    c.codebooks = 5;
    c.sequences = 20;
    return c;
}

SweepConfig SweepConfig::paper_scale() {
    SweepConfig c = desk_scale();
    c.d_values = {5, 15, 100};
    c.codebooks = 20;
    c.sequences = 50;
    return c;
}

const SweepCell& SweepResult::cell(const std::string& model, std::size_t d, std::size_t m) const {
    for (const auto& c : cells)
        if (c.model == model && c.d == d && c.m == m) return c;
    throw std::invalid_argument("SweepResult::cell: no such cell");
}

ResultTable SweepResult::to_table() const {
    ResultTable t;
    t.set_config("experiment", std::string("capacity"));
    std::string models_str;
    for (const auto& m : config.model_tokens) models_str += (models_str.empty() ? "" : ",") + m;
    t.set_config("models", models_str);
    std::string ds, ms;
    for (auto d : config.d_values) ds += (ds.empty() ? "" : ",") + std::to_string(d);
    for (auto m : config.m_values) ms += (ms.empty() ? "" : ",") + std::to_string(m);
    t.set_config("d", ds);
    t.set_config("m", ms);
    t.set_config("dim", static_cast<std::uint64_t>(config.dim));
    t.set_config("codebooks", static_cast<std::uint64_t>(config.codebooks));
    t.set_config("sequences", static_cast<std::uint64_t>(config.sequences));
    t.set_config("seed", config.seed);
    t.set_columns({"model", "b", "d", "m", "D", "mean_accuracy", "std_accuracy", "i_tot",
                   "i_dim", "i_bit", "trials"});
    for (const auto& c : cells) {
        auto& row = t.add_row();
        t.add_cell(row, c.model);
        t.add_cell(row, static_cast<std::int64_t>(c.bits));
        t.add_cell(row, static_cast<std::uint64_t>(c.d));
        t.add_cell(row, static_cast<std::uint64_t>(c.m));
        t.add_cell(row, static_cast<std::uint64_t>(c.dim));
        t.add_cell(row, c.mean_accuracy);
        t.add_cell(row, c.std_accuracy);
        t.add_cell(row, c.info.i_tot);
        t.add_cell(row, c.info.i_dim);
        t.add_cell(row, c.info.i_bit);
        t.add_cell(row, static_cast<std::uint64_t>(c.trial_accuracy.size()));
    }
    return t;
}

namespace {

// Substream tags for the experiment's independent random streams.
enum : std::uint64_t { kTagCodebook = 0xC0DEB00C, kTagSequence = 0x5EC5, kTagTie = 0x71E };

std::vector<std::size_t> draw_sequence(RandomSource& rng, std::size_t d, std::size_t m) {
    std::vector<std::size_t> s(m);
    for (auto& v : s) v = static_cast<std::size_t>(rng.uniform_below(d));
    return s;
}

} // namespace

SweepResult run_capacity_sweep(const SweepConfig& config) {
    if (config.model_tokens.empty() || config.d_values.empty() || config.m_values.empty())
        throw std::invalid_argument("run_capacity_sweep: empty grid");
    if (config.codebooks == 0 || config.sequences == 0)
        throw std::invalid_argument("run_capacity_sweep: trial counts must be >= 1");
    for (auto m : config.m_values)
        if (m == 0) throw std::invalid_argument("run_capacity_sweep: m must be >= 1");

    SweepResult result;
    result.config = config;

    const std::size_t n_models = config.model_tokens.size();
    const std::size_t n_d = config.d_values.size();
    const std::size_t n_m = config.m_values.size();
    const std::size_t trials = config.codebooks * config.sequences;

    result.cells.resize(n_models * n_d * n_m);
    for (std::size_t mi = 0; mi < n_models; ++mi)
        for (std::size_t di = 0; di < n_d; ++di)
            for (std::size_t gi = 0; gi < n_m; ++gi) {
                auto& cell = result.cells[(mi * n_d + di) * n_m + gi];
                const auto desc =
                    models::parse_model_token(config.model_tokens[mi], config.dim);
                cell.model = desc.name();
                cell.bits = desc.bits;
                cell.d = config.d_values[di];
                cell.m = config.m_values[gi];
                cell.dim = config.dim;
                cell.trial_accuracy.assign(trials, 0.0);
            }

    const RandomSource master(config.seed);

    // One work item per (model, d, codebook): the codebook is built once
    // and reused across the m grid, as in the source experiment design.
    struct WorkItem {
        std::size_t mi, di, cb;
    };
    std::vector<WorkItem> items;
    items.reserve(n_models * n_d * config.codebooks);
    for (std::size_t mi = 0; mi < n_models; ++mi)
        for (std::size_t di = 0; di < n_d; ++di)
            for (std::size_t cb = 0; cb < config.codebooks; ++cb) items.push_back({mi, di, cb});

    parallel_for(items.size(), config.jobs, [&](std::size_t item_idx) {
        const WorkItem w = items[item_idx];
        const std::size_t d = config.d_values[w.di];
        const auto model =
            models::make_model(models::parse_model_token(config.model_tokens[w.mi], config.dim));

        RandomSource cb_rng =
            master.substream(kTagCodebook).substream(w.mi).substream(d).substream(w.cb);
        const Codebook codebook = make_codebook(*model, d, cb_rng);

        for (std::size_t gi = 0; gi < n_m; ++gi) {
            const std::size_t m = config.m_values[gi];
            auto& cell = result.cells[(w.mi * n_d + w.di) * n_m + gi];
            for (std::size_t sq = 0; sq < config.sequences; ++sq) {
                // Sequence draw is model-independent: models see identical
                // trials, enabling paired comparisons.
                RandomSource seq_rng = master.substream(kTagSequence)
                                           .substream(d)
                                           .substream(m)
                                           .substream(w.cb * config.sequences + sq);
                const auto symbols = draw_sequence(seq_rng, d, m);
                auto st = encode_sequence(*model, codebook, symbols);
                RandomSource tie_rng = seq_rng.substream(kTagTie).substream(w.mi);
                const auto composite = model->superpose_finish(st, tie_rng);
                const auto decoded = decode_sequence(*model, codebook, composite, m);
                std::size_t correct = 0;
                for (std::size_t j = 0; j < m; ++j)
                    if (decoded[j] == symbols[j]) ++correct;
                cell.trial_accuracy[w.cb * config.sequences + sq] =
                    static_cast<double>(correct) / static_cast<double>(m);
            }
        }
    });

    for (auto& cell : result.cells) {
        double sum = 0;
        for (double a : cell.trial_accuracy) sum += a;
        const double mean = sum / static_cast<double>(trials);
        double var = 0;
        for (double a : cell.trial_accuracy) var += (a - mean) * (a - mean);
        cell.mean_accuracy = mean;
        cell.std_accuracy = trials > 1 ? std::sqrt(var / static_cast<double>(trials - 1)) : 0.0;
        const auto desc = models::parse_model_token(cell.model, cell.dim);
        cell.info = information_metrics(mean, cell.d, cell.m, cell.dim, desc.bits);
    }
    return result;
}

double bootstrap_lower_bound(std::span<const double> diffs, double confidence,
                             std::size_t resamples, std::uint64_t seed) {
    if (diffs.empty()) throw std::invalid_argument("bootstrap_lower_bound: empty sample");
    RandomSource rng(seed);
    std::vector<double> means(resamples);
    const std::size_t n = diffs.size();
    for (std::size_t b = 0; b < resamples; ++b) {
        double s = 0;
        for (std::size_t i = 0; i < n; ++i) s += diffs[rng.uniform_below(n)];
        means[b] = s / static_cast<double>(n);
    }
    std::sort(means.begin(), means.end());
    const double q = 1.0 - confidence;
    std::size_t idx = static_cast<std::size_t>(q * static_cast<double>(resamples));
    if (idx >= resamples) idx = resamples - 1;
    return means[idx];
}

} // namespace mcr::capacity
