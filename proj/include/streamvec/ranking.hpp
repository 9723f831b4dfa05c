// Apache License, Version 2.0, refer to LICENSE.txt

#pragma once

#include "streamvec/periodic.hpp"

#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace streamvec {

struct RunLog {
    std::string name;
    std::map<std::string, std::string> params; // model, emb_size, ... ; may be empty
    std::vector<EvalRecord> records;
};

struct RunSummary {
    std::string name;
    std::map<std::string, std::string> params;
    std::map<std::string, double> dataset_means;
    double overall_mean = 0.0;
};

struct RankingRow {
    std::size_t position = 0;
    RunSummary run;
};

struct RankingReport {
    std::vector<std::string> datasets;
    std::vector<RankingRow> rows;
    std::vector<std::string> excluded;
};

/// Mean of the successful scores of each dataset's time series, then the
/// mean of those means. nullopt when the run has no successful evaluation.
std::optional<RunSummary> summarize_run(const RunLog& log);

/// Orders runs by overall mean, highest first; equal means (within 1e-12)
/// fall back to name order. Runs without successful evaluations are listed
/// in `excluded`.
RankingReport rank_runs(const std::vector<RunLog>& logs);

/// Tab-separated table: position, config, hyperparameters, one mean column
/// per dataset, overall mean.
void write_ranking_tsv(const RankingReport& report, std::ostream& out);

} // namespace streamvec
