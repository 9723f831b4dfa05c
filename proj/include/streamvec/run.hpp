// Apache License, Version 2.0, refer to LICENSE.txt

#pragma once

#include "streamvec/model.hpp"
#include "streamvec/periodic.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace streamvec {

enum class ModelKind { wcm, isg, icbow };

const char* to_string(ModelKind kind);
ModelKind parse_model_kind(const std::string& text);

class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct RunConfig {
    ModelKind model = ModelKind::isg;
    std::size_t emb_size = 100;
    std::size_t window_size = 3;
    std::size_t num_ns = 6;
    std::size_t context_size = 500;
    std::size_t vocab_size = 1'000'000;
    std::size_t table_size = 10'000'000;
    double lr = 0.025;
    double alpha = 0.75;
    std::uint64_t seed = 1;

    std::string corpus;
    std::size_t batch_size = 32;

    std::uint64_t eval_every = 320'000;
    std::vector<std::string> eval_similarity;
    std::vector<std::string> eval_categorization;
    std::vector<std::string> eval_analogy;

    std::string out;  // JSON log
    std::string dump; // embedding text file
    bool deterministic = false;
};

/// Throws ConfigError naming the offending flag. `given` holds the flags set
/// explicitly (without leading dashes); flags that do not apply to the
/// chosen model are rejected.
void validate(const RunConfig& config, const std::set<std::string>& given = {});

std::unique_ptr<EmbeddingModel> make_model(const RunConfig& config);

/// Stable identifier such as "icbow_emb100_win3_ns6" or "wcm_emb100_win3_ctx500".
std::string config_name(const RunConfig& config);

/// Hyperparameters used by the ranking report.
std::map<std::string, std::string> config_params(const RunConfig& config);

/// Flat "key=value" lines mirroring the CLI flag names.
void write_config_file(const RunConfig& config, const std::string& path);
std::map<std::string, std::string> read_config_params(const std::string& path);

std::vector<Evaluator> load_evaluators(const RunConfig& config);

struct TrainResult {
    PeriodicResult periodic;
    std::size_t invalid_lines = 0;
    std::size_t vocabulary = 0;
};

/// Builds the model, streams the corpus through periodic evaluation, writes
/// the JSON log (`out`) and the final embeddings (`dump`) when those are set.
TrainResult run_train(const RunConfig& config);

} // namespace streamvec
