// Apache License, Version 2.0, refer to LICENSE.txt

#include "streamvec/periodic.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <stdexcept>

namespace streamvec {

Evaluator similarity_evaluator(SimilarityDataset ds) {
    auto name = ds.name;
    return {std::move(name), "spearman",
            [ds = std::move(ds)](const EmbeddingSnapshot& s) { return evaluate_similarity(s, ds); }};
}

Evaluator categorization_evaluator(CategorizationDataset ds, std::uint64_t seed) {
    auto name = ds.name;
    return {std::move(name), "purity",
            [ds = std::move(ds), seed](const EmbeddingSnapshot& s) { return evaluate_categorization(s, ds, seed); }};
}

Evaluator analogy_evaluator(AnalogyDataset ds) {
    auto name = ds.name;
    return {std::move(name), "analogy_accuracy",
            [ds = std::move(ds)](const EmbeddingSnapshot& s) { return evaluate_analogy(s, ds); }};
}

nlohmann::ordered_json to_json(const EvalRecord& r) {
    nlohmann::ordered_json j;
    j["c"] = r.c;
    j["dataset"] = r.dataset;
    j["metric"] = r.metric;
    if (r.score && std::isfinite(*r.score))
        j["score"] = *r.score;
    else
        j["score"] = nullptr;
    j["status"] = to_string(r.status);
    j["oov_fraction"] = r.oov_fraction;
    j["wall_ms"] = r.wall_ms;
    return j;
}

EvalRecord record_from_json(const nlohmann::json& j) {
    EvalRecord r;
    r.c = j.at("c").get<std::uint64_t>();
    r.dataset = j.at("dataset").get<std::string>();
    r.metric = j.at("metric").get<std::string>();
    if (!j.at("score").is_null()) r.score = j.at("score").get<double>();
    const auto status = j.at("status").get<std::string>();
    if (status == "ok")
        r.status = EvalStatus::ok;
    else if (status == "undefined")
        r.status = EvalStatus::undefined;
    else if (status == "error")
        r.status = EvalStatus::error;
    else
        throw std::runtime_error("unknown record status: " + status);
    r.oov_fraction = j.at("oov_fraction").get<double>();
    r.wall_ms = j.at("wall_ms").get<std::int64_t>();
    return r;
}

void write_log(const std::string& path, std::span<const EvalRecord> records) {
    auto arr = nlohmann::ordered_json::array();
    for (const auto& r : records) arr.push_back(to_json(r));
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write log " + tmp);
        out << arr.dump(2) << '\n';
        if (!out) throw std::runtime_error("failed writing log " + tmp);
    }
    std::filesystem::rename(tmp, path);
}

std::vector<EvalRecord> read_log(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open log " + path);
    const auto j = nlohmann::json::parse(in);
    if (!j.is_array()) throw std::runtime_error("log is not a JSON array: " + path);
    std::vector<EvalRecord> out;
    out.reserve(j.size());
    for (const auto& item : j) out.push_back(record_from_json(item));
    return out;
}

PeriodicResult periodic_evaluation(const BatchSource& next_batch, EmbeddingModel& model,
                                   std::span<const Evaluator> evaluators, const PeriodicOptions& options) {
    if (options.period == 0) throw std::invalid_argument("evaluation period must be at least 1");
    using clock = std::chrono::steady_clock;
    PeriodicResult result;
    std::uint64_t& c = result.instances;

    while (true) {
        const Batch batch = next_batch();
        if (batch.empty()) break;
        model.learn_many(batch);
        const std::uint64_t before = c;
        c += batch.size();
        const std::uint64_t rounds = crossed_multiples(before, c, options.period);
        if (rounds == 0) continue;

        const EmbeddingSnapshot snap = model.snapshot();
        for (std::uint64_t round = 0; round < rounds; ++round) {
            for (const auto& ev : evaluators) {
                EvalRecord rec;
                rec.c = c;
                rec.dataset = ev.dataset;
                rec.metric = ev.metric;
                const auto start = clock::now();
                try {
                    const MetricOutcome out = ev.run(snap);
                    rec.score = out.score;
                    rec.status = out.status;
                    rec.oov_fraction = out.oov_fraction;
                } catch (const std::exception&) {
                    rec.score.reset();
                    rec.status = EvalStatus::error;
                }
                if (options.record_wall_time)
                    rec.wall_ms = std::chrono::duration_cast<std::chrono::milliseconds>(clock::now() - start).count();
                result.records.push_back(std::move(rec));
            }
            ++result.rounds;
            if (!options.log_path.empty()) write_log(options.log_path, result.records);
        }
    }
    return result;
}

} // namespace streamvec
