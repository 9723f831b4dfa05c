// Apache License, Version 2.0, refer to LICENSE.txt

#pragma once

#include "streamvec/model.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace streamvec {

struct SimilarityPair {
    std::string word1;
    std::string word2;
    double score = 0.0;
};

struct SimilarityDataset {
    std::string name;
    std::vector<SimilarityPair> rows;
};

struct CategorizationItem {
    std::string word;
    std::string category;
};

struct CategorizationDataset {
    std::string name;
    std::vector<CategorizationItem> rows;
};

struct AnalogyQuestion {
    std::string a, b, c, d;
};

struct AnalogyDataset {
    std::string name;
    std::vector<AnalogyQuestion> rows;
};

class DatasetError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Raised when there are no resident words to evaluate against.
class EvaluationSkipped : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Loaders. '#' lines and blank lines are ignored; words are case-folded.
// Dataset name defaults to the file stem.
SimilarityDataset load_similarity(const std::string& path);         // word1 \t word2 \t score
CategorizationDataset load_categorization(const std::string& path); // word \t category
AnalogyDataset load_analogy(const std::string& path);               // a b c d

void validate(const SimilarityDataset& ds);
void validate(const CategorizationDataset& ds);
void validate(const AnalogyDataset& ds);

enum class EvalStatus { ok, undefined, error };
const char* to_string(EvalStatus status);

struct MetricOutcome {
    std::optional<double> score;
    EvalStatus status = EvalStatus::ok;
    double oov_fraction = 0.0;
    /// Rows not scored (analogy questions with an OOV query word).
    std::size_t skipped = 0;
    /// Categorization ran with fewer distinct vectors than clusters.
    bool degenerate = false;
    std::string message;
};

struct ResolvedVectors {
    std::size_t dim = 0;
    std::vector<double> values; // row-major, one row per input word
    std::vector<bool> oov;
    double oov_fraction = 0.0;

    std::span<const double> row(std::size_t i) const { return {values.data() + i * dim, dim}; }
};

/// Resident words get their vector; OOV words get the mean of all resident
/// vectors. Throws EvaluationSkipped on an empty snapshot.
ResolvedVectors resolve_vectors(std::span<const std::string> words, const EmbeddingSnapshot& snapshot);

/// 0 when either vector has zero norm.
double cosine(std::span<const double> a, std::span<const double> b);

/// Average ranks (1-based) with ties sharing the mean rank.
std::vector<double> average_ranks(std::span<const double> values);

/// Pearson correlation of average ranks; nullopt when either side has zero
/// rank variance.
std::optional<double> spearman(std::span<const double> a, std::span<const double> b);

struct KMeansResult {
    std::vector<std::size_t> labels;
    double inertia = 0.0;
};

/// Lloyd's k-means with k-means++ seeding, best inertia over `restarts`.
/// Ties in assignment go to the lowest cluster index.
KMeansResult kmeans(std::span<const double> points, std::size_t dim, std::size_t k, std::uint64_t seed,
                    int restarts = 10, int max_iter = 300);

/// (1/N) * sum over clusters of the largest gold-category overlap.
double purity(std::span<const std::size_t> clusters, std::span<const std::size_t> categories);

MetricOutcome evaluate_similarity(const EmbeddingSnapshot& snapshot, const SimilarityDataset& ds);
MetricOutcome evaluate_categorization(const EmbeddingSnapshot& snapshot, const CategorizationDataset& ds,
                                      std::uint64_t seed = 0);
MetricOutcome evaluate_analogy(const EmbeddingSnapshot& snapshot, const AnalogyDataset& ds);

/// 3CosAdd: resident word maximizing cos(v, b - a + c), excluding a, b, c.
/// nullopt when a, b or c are not resident or nothing else is.
std::optional<std::string> answer_analogy(const EmbeddingSnapshot& snapshot, const AnalogyQuestion& q);

} // namespace streamvec
