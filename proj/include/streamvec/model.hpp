// Apache License, Version 2.0, refer to LICENSE.txt

#pragma once

#include "streamvec/corpus.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace streamvec {

/// Immutable word -> vector table copied out of a model. Evaluation only
/// ever sees snapshots, so training can not change vectors mid-evaluation.
class EmbeddingSnapshot {
public:
    EmbeddingSnapshot() = default;
    explicit EmbeddingSnapshot(std::size_t dim) : dim_(dim) {}

    void add(std::string word, std::span<const double> values);

    std::size_t size() const { return words_.size(); }
    std::size_t dim() const { return dim_; }
    bool empty() const { return words_.empty(); }

    const std::vector<std::string>& words() const { return words_; }
    std::span<const double> row(std::size_t i) const { return {values_.data() + i * dim_, dim_}; }
    std::optional<std::size_t> find(const std::string& word) const;

    bool operator==(const EmbeddingSnapshot& other) const {
        return dim_ == other.dim_ && words_ == other.words_ && values_ == other.values_;
    }

private:
    std::size_t dim_ = 0;
    std::vector<std::string> words_;
    std::vector<double> values_;
    std::unordered_map<std::string, std::size_t> index_;
};

/// Streaming learner. learn_one is the instance-incremental path, learn_many
/// the batch-incremental one.
class EmbeddingModel {
public:
    virtual ~EmbeddingModel() = default;

    virtual void learn_one(const Document& doc) = 0;
    virtual void learn_many(std::span<const Document> batch) = 0;

    virtual std::optional<std::vector<double>> embedding(const std::string& word) const = 0;
    virtual EmbeddingSnapshot snapshot() const = 0;
    virtual std::size_t dim() const = 0;
    virtual std::string_view name() const = 0;
};

/// Text vector format: "<count> <dim>" then "word v1 ... vd" per line, with
/// shortest round-trip decimal formatting.
void dump_embeddings(const EmbeddingSnapshot& snapshot, const std::string& path);
EmbeddingSnapshot load_embeddings(const std::string& path);

} // namespace streamvec
