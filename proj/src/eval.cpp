// Apache License, Version 2.0, refer to LICENSE.txt

#include "streamvec/eval.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <random>
#include <set>

namespace streamvec {

const char* to_string(EvalStatus status) {
    switch (status) {
    case EvalStatus::ok: return "ok";
    case EvalStatus::undefined: return "undefined";
    case EvalStatus::error: return "error";
    }
    return "error";
}

ResolvedVectors resolve_vectors(std::span<const std::string> words, const EmbeddingSnapshot& snapshot) {
    if (snapshot.empty()) throw EvaluationSkipped("model has no resident words");
    const std::size_t dim = snapshot.dim();

    std::vector<double> mean(dim, 0.0);
    for (std::size_t i = 0; i < snapshot.size(); ++i) {
        const auto r = snapshot.row(i);
        for (std::size_t d = 0; d < dim; ++d) mean[d] += r[d];
    }
    for (auto& m : mean) m /= static_cast<double>(snapshot.size());

    ResolvedVectors out;
    out.dim = dim;
    out.values.reserve(words.size() * dim);
    out.oov.reserve(words.size());
    std::size_t missing = 0;
    for (const auto& w : words) {
        if (const auto idx = snapshot.find(w)) {
            const auto r = snapshot.row(*idx);
            out.values.insert(out.values.end(), r.begin(), r.end());
            out.oov.push_back(false);
        } else {
            out.values.insert(out.values.end(), mean.begin(), mean.end());
            out.oov.push_back(true);
            ++missing;
        }
    }
    out.oov_fraction = words.empty() ? 0.0 : static_cast<double>(missing) / static_cast<double>(words.size());
    return out;
}

double cosine(std::span<const double> a, std::span<const double> b) {
    double ab = 0, aa = 0, bb = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        ab += a[i] * b[i];
        aa += a[i] * a[i];
        bb += b[i] * b[i];
    }
    if (aa == 0.0 || bb == 0.0) return 0.0;
    return ab / (std::sqrt(aa) * std::sqrt(bb));
}

std::vector<double> average_ranks(std::span<const double> values) {
    std::vector<std::size_t> order(values.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return values[x] < values[y]; });
    std::vector<double> ranks(values.size());
    std::size_t i = 0;
    while (i < order.size()) {
        std::size_t j = i;
        while (j + 1 < order.size() && values[order[j + 1]] == values[order[i]]) ++j;
        const double rank = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
        for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = rank;
        i = j + 1;
    }
    return ranks;
}

std::optional<double> spearman(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size() || a.size() < 2) throw std::invalid_argument("spearman needs two equal-length lists of at least 2");
    const auto ra = average_ranks(a);
    const auto rb = average_ranks(b);
    const double n = static_cast<double>(a.size());
    const double mean = (n + 1.0) / 2.0; // average ranks always sum to n(n+1)/2
    double cov = 0, va = 0, vb = 0;
    for (std::size_t i = 0; i < ra.size(); ++i) {
        const double da = ra[i] - mean, db = rb[i] - mean;
        cov += da * db;
        va += da * da;
        vb += db * db;
    }
    if (va == 0.0 || vb == 0.0) return std::nullopt;
    return std::clamp(cov / std::sqrt(va * vb), -1.0, 1.0);
}

namespace {

double sq_dist(const double* a, const double* b, std::size_t dim) {
    double s = 0;
    for (std::size_t d = 0; d < dim; ++d) {
        const double t = a[d] - b[d];
        s += t * t;
    }
    return s;
}

KMeansResult lloyd(std::span<const double> points, std::size_t dim, std::size_t k, std::mt19937_64& rng,
                   int max_iter) {
    const std::size_t n = points.size() / dim;
    std::vector<double> centers(k * dim);

    // k-means++ seeding
    std::uniform_int_distribution<std::size_t> first(0, n - 1);
    std::copy_n(points.data() + first(rng) * dim, dim, centers.data());
    std::vector<double> best_d2(n, std::numeric_limits<double>::infinity());
    for (std::size_t c = 1; c < k; ++c) {
        const double* prev = centers.data() + (c - 1) * dim;
        double total = 0;
        for (std::size_t i = 0; i < n; ++i) {
            best_d2[i] = std::min(best_d2[i], sq_dist(points.data() + i * dim, prev, dim));
            total += best_d2[i];
        }
        std::size_t pick;
        if (total <= 0.0) {
            pick = first(rng);
        } else {
            std::uniform_real_distribution<double> u(0.0, total);
            const double target = u(rng);
            double acc = 0;
            pick = n - 1;
            for (std::size_t i = 0; i < n; ++i) {
                acc += best_d2[i];
                if (acc > target) {
                    pick = i;
                    break;
                }
            }
        }
        std::copy_n(points.data() + pick * dim, dim, centers.data() + c * dim);
    }

    KMeansResult res;
    res.labels.assign(n, k);
    std::vector<double> sums(k * dim);
    std::vector<std::size_t> sizes(k);
    for (int iter = 0; iter < max_iter; ++iter) {
        bool changed = false;
        for (std::size_t i = 0; i < n; ++i) {
            std::size_t arg = 0;
            double best = std::numeric_limits<double>::infinity();
            for (std::size_t c = 0; c < k; ++c) {
                const double d2 = sq_dist(points.data() + i * dim, centers.data() + c * dim, dim);
                if (d2 < best) {
                    best = d2;
                    arg = c;
                }
            }
            if (res.labels[i] != arg) {
                res.labels[i] = arg;
                changed = true;
            }
        }
        if (!changed) break;
        std::fill(sums.begin(), sums.end(), 0.0);
        std::fill(sizes.begin(), sizes.end(), 0);
        for (std::size_t i = 0; i < n; ++i) {
            ++sizes[res.labels[i]];
            for (std::size_t d = 0; d < dim; ++d) sums[res.labels[i] * dim + d] += points[i * dim + d];
        }
        for (std::size_t c = 0; c < k; ++c) {
            if (sizes[c] == 0) continue; // empty cluster keeps its center
            for (std::size_t d = 0; d < dim; ++d) centers[c * dim + d] = sums[c * dim + d] / static_cast<double>(sizes[c]);
        }
    }
    res.inertia = 0;
    for (std::size_t i = 0; i < n; ++i)
        res.inertia += sq_dist(points.data() + i * dim, centers.data() + res.labels[i] * dim, dim);
    return res;
}

} // namespace

KMeansResult kmeans(std::span<const double> points, std::size_t dim, std::size_t k, std::uint64_t seed,
                    int restarts, int max_iter) {
    if (dim == 0 || points.size() % dim != 0) throw std::invalid_argument("kmeans: bad point matrix");
    const std::size_t n = points.size() / dim;
    if (k == 0 || k > n) throw std::invalid_argument("kmeans: k must be in [1, n]");
    std::mt19937_64 rng(seed);
    KMeansResult best;
    best.inertia = std::numeric_limits<double>::infinity();
    for (int r = 0; r < std::max(1, restarts); ++r) {
        auto res = lloyd(points, dim, k, rng, max_iter);
        if (res.inertia < best.inertia) best = std::move(res);
    }
    return best;
}

double purity(std::span<const std::size_t> clusters, std::span<const std::size_t> categories) {
    if (clusters.size() != categories.size() || clusters.empty())
        throw std::invalid_argument("purity: label lists must be non-empty and equal length");
    std::map<std::size_t, std::map<std::size_t, std::size_t>> overlap;
    for (std::size_t i = 0; i < clusters.size(); ++i) ++overlap[clusters[i]][categories[i]];
    std::size_t total = 0;
    for (const auto& [cluster, counts] : overlap) {
        std::size_t best = 0;
        for (const auto& [cat, n] : counts) best = std::max(best, n);
        total += best;
    }
    return static_cast<double>(total) / static_cast<double>(clusters.size());
}

MetricOutcome evaluate_similarity(const EmbeddingSnapshot& snapshot, const SimilarityDataset& ds) {
    std::vector<std::string> words;
    words.reserve(ds.rows.size() * 2);
    for (const auto& r : ds.rows) {
        words.push_back(r.word1);
        words.push_back(r.word2);
    }
    const auto vecs = resolve_vectors(words, snapshot);
    std::vector<double> model_scores, gold;
    for (std::size_t i = 0; i < ds.rows.size(); ++i) {
        model_scores.push_back(cosine(vecs.row(2 * i), vecs.row(2 * i + 1)));
        gold.push_back(ds.rows[i].score);
    }
    MetricOutcome out;
    out.oov_fraction = vecs.oov_fraction;
    if (ds.rows.size() < 2) {
        out.status = EvalStatus::undefined;
        out.message = "fewer than two pairs";
        return out;
    }
    out.score = spearman(model_scores, gold);
    if (!out.score) {
        out.status = EvalStatus::undefined;
        out.message = "tied rankings";
    }
    return out;
}

MetricOutcome evaluate_categorization(const EmbeddingSnapshot& snapshot, const CategorizationDataset& ds,
                                      std::uint64_t seed) {
    std::vector<std::string> words;
    std::vector<std::size_t> gold;
    std::map<std::string, std::size_t> category_ids;
    for (const auto& r : ds.rows) {
        words.push_back(r.word);
        auto [it, inserted] = category_ids.emplace(r.category, category_ids.size());
        gold.push_back(it->second);
    }
    const auto vecs = resolve_vectors(words, snapshot);
    const std::size_t k = category_ids.size();

    MetricOutcome out;
    out.oov_fraction = vecs.oov_fraction;
    std::set<std::vector<double>> distinct;
    for (std::size_t i = 0; i < words.size(); ++i) {
        const auto r = vecs.row(i);
        distinct.emplace(r.begin(), r.end());
    }
    out.degenerate = distinct.size() < k;
    if (out.degenerate) out.message = "fewer distinct vectors than categories";

    const auto clusters = kmeans(vecs.values, vecs.dim, k, seed);
    out.score = purity(clusters.labels, gold);
    return out;
}

std::optional<std::string> answer_analogy(const EmbeddingSnapshot& snapshot, const AnalogyQuestion& q) {
    const auto ia = snapshot.find(q.a), ib = snapshot.find(q.b), ic = snapshot.find(q.c);
    if (!ia || !ib || !ic) return std::nullopt;
    const std::size_t dim = snapshot.dim();
    std::vector<double> target(dim);
    const auto a = snapshot.row(*ia), b = snapshot.row(*ib), c = snapshot.row(*ic);
    for (std::size_t d = 0; d < dim; ++d) target[d] = b[d] - a[d] + c[d];

    std::optional<std::size_t> best;
    double best_score = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < snapshot.size(); ++i) {
        if (i == *ia || i == *ib || i == *ic) continue;
        const double s = cosine(snapshot.row(i), target);
        if (s > best_score) {
            best_score = s;
            best = i;
        }
    }
    if (!best) return std::nullopt;
    return snapshot.words()[*best];
}

MetricOutcome evaluate_analogy(const EmbeddingSnapshot& snapshot, const AnalogyDataset& ds) {
    if (snapshot.empty()) throw EvaluationSkipped("model has no resident words");
    MetricOutcome out;
    std::size_t missing = 0, answered = 0, correct = 0;
    for (const auto& q : ds.rows) {
        for (const auto* w : {&q.a, &q.b, &q.c, &q.d})
            if (!snapshot.find(*w)) ++missing;
        if (!snapshot.find(q.a) || !snapshot.find(q.b) || !snapshot.find(q.c)) {
            ++out.skipped;
            continue;
        }
        ++answered;
        const auto guess = answer_analogy(snapshot, q);
        if (guess && *guess == q.d) ++correct;
    }
    out.oov_fraction = static_cast<double>(missing) / static_cast<double>(4 * ds.rows.size());
    if (answered == 0) {
        out.status = EvalStatus::undefined;
        out.message = "every question has an out-of-vocabulary query word";
        return out;
    }
    out.score = static_cast<double>(correct) / static_cast<double>(answered);
    return out;
}

} // namespace streamvec
