// Apache License, Version 2.0, refer to LICENSE.txt

#include "streamvec/corpus.hpp"
#include "streamvec/eval.hpp"

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

namespace streamvec {
namespace {

std::string stem(const std::string& path) { return std::filesystem::path(path).stem().string(); }

// Yields (line number, content) for non-comment, non-blank lines.
template <typename Fn>
void for_each_line(const std::string& path, Fn&& fn) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DatasetError("cannot open dataset " + path);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const auto first = line.find_first_not_of(" \t");
        if (first == std::string::npos || line[first] == '#') continue;
        if (!is_valid_utf8(line)) throw DatasetError(path + ":" + std::to_string(lineno) + ": invalid UTF-8");
        fn(lineno, std::string_view(line));
    }
}

std::vector<std::string_view> split_tabs(std::string_view line) {
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    while (true) {
        const auto tab = line.find('\t', start);
        parts.push_back(line.substr(start, tab - start));
        if (tab == std::string_view::npos) break;
        start = tab + 1;
    }
    return parts;
}

std::string trim_fold(std::string_view s) {
    const auto a = s.find_first_not_of(" ");
    if (a == std::string_view::npos) return {};
    const auto b = s.find_last_not_of(" ");
    return fold_case(s.substr(a, b - a + 1));
}

} // namespace

SimilarityDataset load_similarity(const std::string& path) {
    SimilarityDataset ds{stem(path), {}};
    for_each_line(path, [&](std::size_t lineno, std::string_view line) {
        const auto parts = split_tabs(line);
        if (parts.size() != 3) throw DatasetError(path + ":" + std::to_string(lineno) + ": expected 3 tab-separated fields");
        SimilarityPair row{trim_fold(parts[0]), trim_fold(parts[1]), 0.0};
        const auto score_text = trim_fold(parts[2]);
        auto res = std::from_chars(score_text.data(), score_text.data() + score_text.size(), row.score);
        if (res.ec != std::errc() || res.ptr != score_text.data() + score_text.size())
            throw DatasetError(path + ":" + std::to_string(lineno) + ": bad score '" + score_text + "'");
        ds.rows.push_back(std::move(row));
    });
    validate(ds);
    return ds;
}

CategorizationDataset load_categorization(const std::string& path) {
    CategorizationDataset ds{stem(path), {}};
    for_each_line(path, [&](std::size_t lineno, std::string_view line) {
        const auto parts = split_tabs(line);
        if (parts.size() != 2) throw DatasetError(path + ":" + std::to_string(lineno) + ": expected 2 tab-separated fields");
        ds.rows.push_back({trim_fold(parts[0]), trim_fold(parts[1])});
    });
    validate(ds);
    return ds;
}

AnalogyDataset load_analogy(const std::string& path) {
    AnalogyDataset ds{stem(path), {}};
    for_each_line(path, [&](std::size_t lineno, std::string_view line) {
        std::istringstream words{std::string(line)};
        std::vector<std::string> w;
        std::string tok;
        while (words >> tok) w.push_back(fold_case(tok));
        if (w.size() != 4) throw DatasetError(path + ":" + std::to_string(lineno) + ": expected 4 words");
        ds.rows.push_back({w[0], w[1], w[2], w[3]});
    });
    validate(ds);
    return ds;
}

void validate(const SimilarityDataset& ds) {
    if (ds.rows.empty()) throw DatasetError("similarity dataset " + ds.name + " is empty");
    std::set<std::pair<std::string, std::string>> seen;
    for (const auto& r : ds.rows) {
        if (r.word1.empty() || r.word2.empty()) throw DatasetError(ds.name + ": empty word");
        if (!std::isfinite(r.score)) throw DatasetError(ds.name + ": non-finite score");
        auto key = r.word1 < r.word2 ? std::pair{r.word1, r.word2} : std::pair{r.word2, r.word1};
        if (!seen.insert(std::move(key)).second)
            throw DatasetError(ds.name + ": duplicate pair " + r.word1 + " / " + r.word2);
    }
}

void validate(const CategorizationDataset& ds) {
    if (ds.rows.empty()) throw DatasetError("categorization dataset " + ds.name + " is empty");
    std::set<std::string> words, categories;
    for (const auto& r : ds.rows) {
        if (r.word.empty() || r.category.empty()) throw DatasetError(ds.name + ": empty field");
        if (!words.insert(r.word).second) throw DatasetError(ds.name + ": word listed twice: " + r.word);
        categories.insert(r.category);
    }
    if (categories.size() < 2) throw DatasetError(ds.name + ": needs at least two categories");
}

void validate(const AnalogyDataset& ds) {
    if (ds.rows.empty()) throw DatasetError("analogy dataset " + ds.name + " is empty");
    for (const auto& q : ds.rows)
        if (q.a.empty() || q.b.empty() || q.c.empty() || q.d.empty()) throw DatasetError(ds.name + ": empty word");
}

} // namespace streamvec
