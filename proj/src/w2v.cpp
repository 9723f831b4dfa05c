// Apache License, Version 2.0, refer to LICENSE.txt

#include "streamvec/w2v.hpp"

#include "streamvec/sgns.hpp"

#include <stdexcept>

namespace streamvec {

W2vModel::W2vModel(W2vConfig config)
    : config_(config),
      vocab_(config.vocab_size),
      table_(config.table_size, config.alpha, config.seed),
      init_rng_(config.seed ^ 0x9E3779B97F4A7C15ULL) {
    if (config_.emb_size == 0) throw std::invalid_argument("emb_size must be positive");
    if (config_.window_size == 0) throw std::invalid_argument("window_size must be positive");
    if (!(config_.lr > 0.0f)) throw std::invalid_argument("learning rate must be positive");
}

void W2vModel::ensure_rows(std::size_t slots) {
    const std::size_t need = slots * config_.emb_size;
    if (in_.size() < need) {
        in_.resize(need, 0.0f);
        out_.resize(need, 0.0f);
    }
}

void W2vModel::init_row(Slot s) {
    ensure_rows(std::size_t(s) + 1);
    const float bound = 0.5f / static_cast<float>(config_.emb_size);
    std::uniform_real_distribution<float> unit(-bound, bound);
    for (auto& v : in_row(s)) v = unit(init_rng_);
    for (auto& v : out_row(s)) v = 0.0f;
}

std::optional<Slot> W2vModel::observe(const std::string& word) {
    ++stats_.tokens;
    const VocabEvent ev = vocab_.observe(word);
    for (Slot s : ev.evicted_slots) table_.reset_slot(s);
    if (!ev.slot) return std::nullopt;
    if (ev.kind == VocabEventKind::inserted || ev.kind == VocabEventKind::evicted_then_inserted) {
        table_.reset_slot(*ev.slot);
        init_row(*ev.slot);
    }
    table_.update(*ev.slot);
    return ev.slot;
}

double W2vModel::sgns_step(Slot target, Slot context, std::span<const Slot> negatives) {
    neg_rows_.clear();
    for (Slot n : negatives) neg_rows_.push_back(out_row(n));
    ++stats_.steps;
    const float loss = streamvec::sgns_step<float>(in_row(target), out_row(context), neg_rows_, config_.lr);
    stats_.loss_sum += loss;
    return loss;
}

double W2vModel::cbow_step(std::span<const Slot> context_slots, Slot target, std::span<const Slot> negatives) {
    if (context_slots.empty()) {
        ++stats_.skipped_cbow;
        return 0.0;
    }
    ctx_rows_.clear();
    for (Slot c : context_slots) ctx_rows_.push_back(in_row(c));
    neg_rows_.clear();
    for (Slot n : negatives) neg_rows_.push_back(out_row(n));
    ++stats_.steps;
    const float loss = streamvec::cbow_step<float>(ctx_rows_, out_row(target), neg_rows_, config_.lr);
    stats_.loss_sum += loss;
    return loss;
}

void W2vModel::learn_one(const Document& doc) {
    const auto& tokens = doc.tokens;
    for (const auto& tok : tokens) observe(tok);
    if (tokens.size() < 2) return;

    resolved_.resize(tokens.size());
    for (std::size_t i = 0; i < tokens.size(); ++i) resolved_[i] = vocab_.slot_of(tokens[i]);

    const std::size_t w = config_.window_size;
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        if (!resolved_[i]) continue;
        const Slot target = *resolved_[i];
        const std::size_t lo = i >= w ? i - w : 0;
        const std::size_t hi = std::min(tokens.size(), i + w + 1);
        window_.clear();
        for (std::size_t j = lo; j < hi; ++j)
            if (j != i && resolved_[j]) window_.push_back(*resolved_[j]);

        if (config_.head == W2vHead::skipgram) {
            for (Slot context : window_) {
                const Slot exclude[] = {context};
                table_.sample_into(negatives_, config_.num_ns, exclude);
                sgns_step(target, context, negatives_);
            }
        } else {
            if (window_.empty()) {
                ++stats_.skipped_cbow;
                continue;
            }
            const Slot exclude[] = {target};
            table_.sample_into(negatives_, config_.num_ns, exclude);
            cbow_step(window_, target, negatives_);
        }
    }
}

void W2vModel::learn_many(std::span<const Document> batch) {
    for (const auto& doc : batch) learn_one(doc);
}

std::optional<std::vector<double>> W2vModel::embedding(const std::string& word) const {
    const auto slot = vocab_.slot_of(word);
    if (!slot) return std::nullopt;
    const auto row = in_row(*slot);
    return std::vector<double>(row.begin(), row.end());
}

EmbeddingSnapshot W2vModel::snapshot() const {
    EmbeddingSnapshot snap(config_.emb_size);
    std::vector<double> buf(config_.emb_size);
    vocab_.for_each_resident([&](const std::string& word, Slot s) {
        const auto row = in_row(s);
        std::copy(row.begin(), row.end(), buf.begin());
        snap.add(word, buf);
    });
    return snap;
}

} // namespace streamvec
