// Apache License, Version 2.0, refer to LICENSE.txt

#include "streamvec/wcm.hpp"

#include <algorithm>
#include <cmath>

namespace streamvec {

WcmModel::WcmModel(WcmConfig config)
    : config_(config),
      min_batch_(config.min_batch == 0 ? config.emb_size : config.min_batch),
      vocab_(config.vocab_size),
      contexts_(config.context_size),
      pca_(config.emb_size, config.context_size) {
    if (config_.window_size == 0) throw std::invalid_argument("window_size must be positive");
    if (min_batch_ < config_.emb_size) throw std::invalid_argument("min_batch must be at least emb_size");
    if (!(config_.context_smoothing > 0.0 && config_.context_smoothing <= 1.0))
        throw std::invalid_argument("context smoothing exponent must be in (0, 1]");
    context_counts_.assign(config_.context_size, 0);
    columns_.resize(config_.context_size);
}

void WcmModel::drop_word(Slot w) {
    if (w >= rows_.size()) return;
    for (const auto& [c, n] : rows_[w]) columns_[c].erase(w);
    rows_[w].clear();
    word_counts_[w] = 0;
}

void WcmModel::drop_context(Slot c) {
    for (Slot w : columns_[c]) rows_[w].erase(c);
    columns_[c].clear();
    const double alpha = config_.context_smoothing;
    if (alpha != 1.0) smoothed_context_mass_ -= std::pow(static_cast<double>(context_counts_[c]), alpha);
    context_mass_ -= context_counts_[c];
    context_counts_[c] = 0;
}

void WcmModel::enqueue(Slot w) {
    if (w >= queued_.size()) queued_.resize(std::size_t(w) + 1, 0);
    if (!queued_[w]) {
        queued_[w] = 1;
        queue_.push_back(w);
    }
}

void WcmModel::learn_one(const Document& doc) {
    const auto& tokens = doc.tokens;
    const std::size_t win = config_.window_size;
    const double alpha = config_.context_smoothing;
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        ++total_;
        const VocabEvent ev = vocab_.observe(tokens[i]);
        for (Slot s : ev.evicted_slots) drop_word(s);
        if (!ev.slot) continue;
        const Slot w = *ev.slot;
        if (w >= rows_.size()) {
            rows_.resize(std::size_t(w) + 1);
            word_counts_.resize(std::size_t(w) + 1, 0);
        }
        ++word_counts_[w];

        const std::size_t lo = i >= win ? i - win : 0;
        const std::size_t hi = std::min(tokens.size(), i + win + 1);
        bool touched = false;
        for (std::size_t j = lo; j < hi; ++j) {
            if (j == i) continue;
            const VocabEvent cev = contexts_.observe(tokens[j]);
            for (Slot s : cev.evicted_slots) drop_context(s);
            if (!cev.slot) continue;
            const Slot c = *cev.slot;
            if (++rows_[w][c] == 1) columns_[c].insert(w);
            if (alpha != 1.0) {
                const auto old = static_cast<double>(context_counts_[c]);
                smoothed_context_mass_ += std::pow(old + 1.0, alpha) - std::pow(old, alpha);
            }
            ++context_counts_[c];
            ++context_mass_;
            touched = true;
        }
        if (touched) enqueue(w);
    }
    refresh_projector();
}

void WcmModel::learn_many(std::span<const Document> batch) {
    for (const auto& doc : batch) learn_one(doc);
}

std::uint64_t WcmModel::pair_count(Slot word, Slot context) const {
    if (word >= rows_.size()) return 0;
    const auto it = rows_[word].find(context);
    return it == rows_[word].end() ? 0 : it->second;
}

double ppmi_cell(std::uint64_t n_wc, std::uint64_t n_w, std::uint64_t n_c, std::uint64_t total) {
    if (n_wc == 0) return 0.0;
    const double ratio = (static_cast<double>(n_wc) * static_cast<double>(total)) /
                         (static_cast<double>(n_w) * static_cast<double>(n_c));
    return std::max(0.0, std::log2(ratio));
}

double WcmModel::ppmi(Slot word, Slot context) const {
    const std::uint64_t nw = word_count(word);
    const std::uint64_t nc = context_count(context);
    if (nw == 0 || nc == 0) throw UndefinedCellError("PPMI cell has a zero marginal count");
    const std::uint64_t nwc = pair_count(word, context);
    if (nwc == 0) return 0.0;
    if (config_.context_smoothing == 1.0) return ppmi_cell(nwc, nw, nc, total_);
    const double p_wc = static_cast<double>(nwc) / static_cast<double>(context_mass_);
    const double p_w = static_cast<double>(nw) / static_cast<double>(total_);
    const double p_c = std::pow(static_cast<double>(nc), config_.context_smoothing) / smoothed_context_mass_;
    return std::max(0.0, std::log2(p_wc / (p_w * p_c)));
}

std::vector<double> WcmModel::ppmi_row(Slot word) const {
    std::vector<double> row(config_.context_size, 0.0);
    if (word >= rows_.size()) return row;
    for (const auto& [c, n] : rows_[word]) row[c] = ppmi(word, c);
    return row;
}

bool WcmModel::refresh_projector() {
    std::erase_if(queue_, [&](Slot w) {
        if (vocab_.occupied(w)) return false;
        queued_[w] = 0;
        return true;
    });
    if (queue_.size() < min_batch_) return false;

    Eigen::MatrixXd batch(static_cast<Eigen::Index>(queue_.size()), static_cast<Eigen::Index>(config_.context_size));
    for (std::size_t r = 0; r < queue_.size(); ++r) {
        const auto row = ppmi_row(queue_[r]);
        batch.row(static_cast<Eigen::Index>(r)) = Eigen::Map<const Eigen::RowVectorXd>(row.data(), row.size());
        queued_[queue_[r]] = 0;
    }
    queue_.clear();
    pca_.partial_fit(batch);
    return true;
}

std::vector<double> WcmModel::project(Slot w) const {
    const auto row = ppmi_row(w);
    if (!projector_ready()) return std::vector<double>(row.begin(), row.begin() + config_.emb_size);
    const Eigen::VectorXd y = pca_.transform(Eigen::Map<const Eigen::VectorXd>(row.data(), row.size()));
    return std::vector<double>(y.data(), y.data() + y.size());
}

std::optional<WcmEmbedding> WcmModel::embedding_info(const std::string& word) const {
    const auto slot = vocab_.slot_of(word);
    if (!slot) return std::nullopt;
    return WcmEmbedding{project(*slot), !projector_ready()};
}

std::optional<std::vector<double>> WcmModel::embedding(const std::string& word) const {
    auto info = embedding_info(word);
    if (!info) return std::nullopt;
    return std::move(info->values);
}

EmbeddingSnapshot WcmModel::snapshot() const {
    EmbeddingSnapshot snap(config_.emb_size);
    vocab_.for_each_resident([&](const std::string& word, Slot s) { snap.add(word, project(s)); });
    return snap;
}

WcmCounters WcmModel::counters() const {
    WcmCounters out;
    out.total = total_;
    for (Slot w = 0; w < rows_.size(); ++w) {
        if (word_counts_[w] != 0) out.words[w] = word_counts_[w];
        for (const auto& [c, n] : rows_[w]) out.pairs[{w, c}] = n;
    }
    for (Slot c = 0; c < context_counts_.size(); ++c)
        if (context_counts_[c] != 0) out.contexts[c] = context_counts_[c];
    return out;
}

} // namespace streamvec
