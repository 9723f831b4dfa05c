// Apache License, Version 2.0, refer to LICENSE.txt

#pragma once

#include "streamvec/corpus.hpp"
#include "streamvec/eval.hpp"
#include "streamvec/model.hpp"

#include <json.hpp>

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace streamvec {

struct Evaluator {
    std::string dataset;
    std::string metric; // spearman | purity | analogy_accuracy
    std::function<MetricOutcome(const EmbeddingSnapshot&)> run;
};

Evaluator similarity_evaluator(SimilarityDataset ds);
Evaluator categorization_evaluator(CategorizationDataset ds, std::uint64_t seed = 0);
Evaluator analogy_evaluator(AnalogyDataset ds);

struct EvalRecord {
    std::uint64_t c = 0;
    std::string dataset;
    std::string metric;
    std::optional<double> score;
    EvalStatus status = EvalStatus::ok;
    double oov_fraction = 0.0;
    std::int64_t wall_ms = 0;

    bool operator==(const EvalRecord&) const = default;
};

nlohmann::ordered_json to_json(const EvalRecord& record);
EvalRecord record_from_json(const nlohmann::json& j);

/// Writes the whole array to `path` through a temporary file and rename, so
/// readers never see a half-written log.
void write_log(const std::string& path, std::span<const EvalRecord> records);
std::vector<EvalRecord> read_log(const std::string& path);

/// Number of multiples of `period` in (before, after].
inline std::uint64_t crossed_multiples(std::uint64_t before, std::uint64_t after, std::uint64_t period) {
    return after / period - before / period;
}

struct PeriodicOptions {
    std::uint64_t period = 320'000;
    /// When false every wall_ms is written as 0 so logs are reproducible.
    bool record_wall_time = true;
    /// Empty: keep records in memory only.
    std::string log_path;
};

/// Returns the next batch; an empty batch ends the stream.
using BatchSource = std::function<Batch()>;

struct PeriodicResult {
    std::vector<EvalRecord> records;
    std::uint64_t instances = 0;
    std::size_t rounds = 0;
};

/// Trains on every batch with learn_many, adds the batch length to the
/// instance counter, and runs one evaluation round for each multiple of the
/// period the counter reached or passed in that batch. A round evaluates
/// every evaluator on one snapshot; a throwing evaluator yields an "error"
/// record and training continues. The log is rewritten after each round.
PeriodicResult periodic_evaluation(const BatchSource& next_batch, EmbeddingModel& model,
                                   std::span<const Evaluator> evaluators, const PeriodicOptions& options);

} // namespace streamvec
