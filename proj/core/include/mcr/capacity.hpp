#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "mcr/models.hpp"
#include "mcr/random.hpp"
#include "mcr/result_io.hpp"

namespace mcr::capacity {

// d random symbol vectors over one model.
struct Codebook {
    models::ModelDescriptor desc;
    std::vector<models::GenericHV> vectors;

    std::size_t size() const { return vectors.size(); }
};

Codebook make_codebook(const models::VsaModel& model, std::size_t d, RandomSource& rng);

// Composite of position-permuted codebook vectors, held in full
// precision: phi(s) = sum_j rho^(m-j)(Phi_{s_j}). Symbol indices are
// 0-based into the codebook.
models::SuperposeState encode_sequence(const models::VsaModel& model, const Codebook& cb,
                                       std::span<const std::size_t> symbols);

// Codebook decoding of an already-normalized composite: per position j,
// the symbol whose codebook vector is closest to rho^-(m-j)(phi). Ties
// break to the lowest index.
std::vector<std::size_t> decode_sequence(const models::VsaModel& model, const Codebook& cb,
                                         const models::GenericHV& composite, std::size_t m);

struct InfoMetrics {
    double i_symb = 0;  // bits decoded per symbol
    double i_tot = 0;   // m * i_symb
    double i_dim = 0;   // i_tot / D
    double i_bit = 0;   // i_tot / (D*b)
    bool clamped = false;  // accuracy was below chance; i_symb clamped to 0
};

// Decoded-information metrics for accuracy a over a d-symbol codebook.
// a = 1 gives i_symb = log2(d); a = 1/d gives 0; sub-chance accuracy is
// clamped to 0 and flagged.
InfoMetrics information_metrics(double a, std::size_t d, std::size_t m, std::size_t dim, int bits);

struct SweepConfig {
    std::vector<std::string> model_tokens;  // e.g. {"mcr16","bsc","fhrr"}
    std::vector<std::size_t> d_values;
    std::vector<std::size_t> m_values;
    std::size_t dim = 500;
    std::size_t codebooks = 5;
    std::size_t sequences = 20;
    std::uint64_t seed = 1;
    std::size_t jobs = 0;

    static SweepConfig desk_scale();   // d=15, m in {10,50,100,200,400}, 5x20 trials
    static SweepConfig paper_scale();  // d in {5,15,100}, 20x50 trials
};

struct SweepCell {
    std::string model;
    int bits = 0;
    std::size_t d = 0, m = 0, dim = 0;
    double mean_accuracy = 0, std_accuracy = 0;
    InfoMetrics info;
    std::vector<double> trial_accuracy;  // indexed by codebook*sequences + sequence
};

struct SweepResult {
    SweepConfig config;
    std::vector<SweepCell> cells;  // model-major, then d, then m

    const SweepCell& cell(const std::string& model, std::size_t d, std::size_t m) const;
    ResultTable to_table() const;
};

// Deterministic given the seed: trials are keyed by (model, d, codebook,
// m, sequence) substreams, and sequence draws are model-independent so
// models can be compared pairwise on identical trials.
SweepResult run_capacity_sweep(const SweepConfig& config);

// One-sided lower bound of the mean of paired differences at the given
// confidence level, by percentile bootstrap (deterministic given seed).
double bootstrap_lower_bound(std::span<const double> diffs, double confidence,
                             std::size_t resamples, std::uint64_t seed);

} // namespace mcr::capacity
