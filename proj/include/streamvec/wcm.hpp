// Apache License, Version 2.0, refer to LICENSE.txt

#pragma once

#include "streamvec/ipca.hpp"
#include "streamvec/model.hpp"
#include "streamvec/vocab.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace streamvec {

struct WcmConfig {
    std::size_t vocab_size = 1'000'000;
    std::size_t context_size = 500;
    std::size_t window_size = 3;
    std::size_t emb_size = 100;
    /// Rows needed before a PCA update; 0 means emb_size.
    std::size_t min_batch = 0;
    /// Context-distribution smoothing exponent; 1 gives plain PPMI.
    double context_smoothing = 1.0;
};

class UndefinedCellError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// max(0, log2(n_wc * total / (n_w * n_c))); 0 when n_wc is 0.
double ppmi_cell(std::uint64_t n_wc, std::uint64_t n_w, std::uint64_t n_c, std::uint64_t total);

struct WcmEmbedding {
    std::vector<double> values;
    /// True while the projector has not seen min_batch rows yet; values are
    /// then the leading PPMI coordinates.
    bool bootstrap = true;
};

/// Exact counter state, ordered for comparisons.
struct WcmCounters {
    std::uint64_t total = 0;
    std::map<std::pair<Slot, Slot>, std::uint64_t> pairs;
    std::map<Slot, std::uint64_t> words;
    std::map<Slot, std::uint64_t> contexts;

    bool operator==(const WcmCounters&) const = default;
};

/// Incremental word-context matrix with PPMI weights and an incremental PCA
/// projection to dense vectors.
///
/// count(w) grows once per resident token occurrence and count(c) once per
/// (w, c) window pair, so count(w, c) * D / (count(w) * count(c)) is the PMI
/// ratio of pair and marginal probabilities. PPMI cells are evaluated from
/// the live counters on read. Evicting a word drops its row; evicting a
/// context drops its column. D keeps all mass.
class WcmModel final : public EmbeddingModel {
public:
    explicit WcmModel(WcmConfig config);

    void learn_one(const Document& doc) override;
    void learn_many(std::span<const Document> batch) override;

    std::optional<std::vector<double>> embedding(const std::string& word) const override;
    std::optional<WcmEmbedding> embedding_info(const std::string& word) const;
    EmbeddingSnapshot snapshot() const override;
    std::size_t dim() const override { return config_.emb_size; }
    std::string_view name() const override { return "wcm"; }

    /// max(0, log2(count(w,c) * D / (count(w) * count(c)))); 0 for an unseen
    /// pair. Throws UndefinedCellError when a marginal is zero.
    double ppmi(Slot word, Slot context) const;
    std::vector<double> ppmi_row(Slot word) const;

    /// Runs one PCA update over the queued rows when at least min_batch
    /// distinct resident rows are waiting; otherwise keeps the queue.
    /// Returns whether an update happened.
    bool refresh_projector();

    std::uint64_t total() const { return total_; }
    std::uint64_t pair_count(Slot word, Slot context) const;
    std::uint64_t word_count(Slot word) const { return word < word_counts_.size() ? word_counts_[word] : 0; }
    std::uint64_t context_count(Slot c) const { return c < context_counts_.size() ? context_counts_[c] : 0; }
    WcmCounters counters() const;

    const WcmConfig& config() const { return config_; }
    const BoundedVocab& vocab() const { return vocab_; }
    const BoundedVocab& context_vocab() const { return contexts_; }
    const IncrementalPca& projector() const { return pca_; }
    bool projector_ready() const { return pca_.samples_seen() >= min_batch_; }
    std::size_t queued_rows() const { return queue_.size(); }
    std::size_t min_batch() const { return min_batch_; }

private:
    void drop_word(Slot w);
    void drop_context(Slot c);
    void enqueue(Slot w);
    std::vector<double> project(Slot w) const;

    WcmConfig config_;
    std::size_t min_batch_;
    BoundedVocab vocab_;
    BoundedVocab contexts_;
    std::uint64_t total_ = 0;

    std::vector<std::unordered_map<Slot, std::uint64_t>> rows_;
    std::vector<std::unordered_set<Slot>> columns_;
    std::vector<std::uint64_t> word_counts_;
    std::vector<std::uint64_t> context_counts_;
    std::uint64_t context_mass_ = 0;
    double smoothed_context_mass_ = 0.0;

    std::vector<Slot> queue_;
    std::vector<char> queued_;

    IncrementalPca pca_;
};

} // namespace streamvec
