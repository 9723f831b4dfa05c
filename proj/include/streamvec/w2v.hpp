// Apache License, Version 2.0, refer to LICENSE.txt

#pragma once

#include "streamvec/model.hpp"
#include "streamvec/unigram_table.hpp"
#include "streamvec/vocab.hpp"

#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace streamvec {

enum class W2vHead { skipgram, cbow };

struct W2vConfig {
    W2vHead head = W2vHead::skipgram;
    std::size_t vocab_size = 1'000'000;
    std::size_t emb_size = 100;
    std::size_t window_size = 3;
    std::size_t num_ns = 6;
    float lr = 0.025f;
    std::size_t table_size = 10'000'000;
    double alpha = 0.75;
    std::uint64_t seed = 1;
};

struct W2vStats {
    std::uint64_t tokens = 0;
    std::uint64_t steps = 0;
    std::uint64_t skipped_cbow = 0;
    double loss_sum = 0.0;
};

/// Incremental word2vec with negative sampling (ISG / ICBOW).
///
/// Each document is processed in two passes: every token first updates the
/// vocabulary and the unigram table, then training pairs are built from the
/// slots resident at that point. Rows of recycled slots are re-initialized.
class W2vModel final : public EmbeddingModel {
public:
    explicit W2vModel(W2vConfig config);

    void learn_one(const Document& doc) override;
    void learn_many(std::span<const Document> batch) override;

    std::optional<std::vector<double>> embedding(const std::string& word) const override;
    EmbeddingSnapshot snapshot() const override;
    std::size_t dim() const override { return config_.emb_size; }
    std::string_view name() const override { return config_.head == W2vHead::skipgram ? "isg" : "icbow"; }

    /// One skip-gram update: in-row of `target` against out-rows of `context`
    /// and `negatives`. Returns the pre-update loss.
    double sgns_step(Slot target, Slot context, std::span<const Slot> negatives);
    /// One CBOW update: mean of in-rows of `context_slots` against out-rows of
    /// `target` and `negatives`. Returns the pre-update loss.
    double cbow_step(std::span<const Slot> context_slots, Slot target, std::span<const Slot> negatives);

    const W2vConfig& config() const { return config_; }
    const BoundedVocab& vocab() const { return vocab_; }
    const UnigramTable& table() const { return table_; }
    UnigramTable& table() { return table_; }
    const W2vStats& stats() const { return stats_; }

    std::span<float> in_row(Slot s) { return {in_.data() + std::size_t(s) * config_.emb_size, config_.emb_size}; }
    std::span<float> out_row(Slot s) { return {out_.data() + std::size_t(s) * config_.emb_size, config_.emb_size}; }
    std::span<const float> in_row(Slot s) const {
        return {in_.data() + std::size_t(s) * config_.emb_size, config_.emb_size};
    }
    std::span<const float> out_row(Slot s) const {
        return {out_.data() + std::size_t(s) * config_.emb_size, config_.emb_size};
    }

    /// Observe a word without training (vocabulary, table, row init).
    std::optional<Slot> observe(const std::string& word);

private:
    void init_row(Slot s);
    void ensure_rows(std::size_t slots);

    W2vConfig config_;
    BoundedVocab vocab_;
    UnigramTable table_;
    std::vector<float> in_;
    std::vector<float> out_;
    std::mt19937_64 init_rng_;
    W2vStats stats_;

    std::vector<std::optional<Slot>> resolved_;
    std::vector<Slot> window_;
    std::vector<Slot> negatives_;
    std::vector<std::span<float>> neg_rows_;
    std::vector<std::span<float>> ctx_rows_;
};

} // namespace streamvec
