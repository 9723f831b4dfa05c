// Apache License, Version 2.0, refer to LICENSE.txt

// Shared fixtures for the test suites: temp files and synthetic streams.

#pragma once

#include "streamvec/corpus.hpp"

#include <cmath>
#include <cstdint>
#include <unistd.h>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <vector>

namespace streamvec::testing {

inline std::string data_path(const std::string& name) { return std::string(STREAMVEC_TEST_DATA) + "/" + name; }

/// Unique path under the system temp dir, removed on destruction.
class TempPath {
public:
    explicit TempPath(const std::string& suffix = "") {
        static int counter = 0;
        path_ = (std::filesystem::temp_directory_path() /
                 ("streamvec_" + std::to_string(::getpid()) + "_" + std::to_string(counter++) + suffix))
                    .string();
    }
    ~TempPath() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    TempPath(const TempPath&) = delete;
    TempPath& operator=(const TempPath&) = delete;

    const std::string& str() const { return path_; }

private:
    std::string path_;
};

inline void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out << content;
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    return std::string(std::istreambuf_iterator<char>(in), {});
}

/// Draws ranks 0..n-1 with P(r) proportional to 1/(r+1)^s.
class Zipf {
public:
    Zipf(std::size_t n, double s) {
        std::vector<double> w(n);
        for (std::size_t r = 0; r < n; ++r) w[r] = 1.0 / std::pow(double(r + 1), s);
        dist_ = std::discrete_distribution<std::size_t>(w.begin(), w.end());
    }
    template <typename Rng>
    std::size_t operator()(Rng& rng) {
        return dist_(rng);
    }

private:
    std::discrete_distribution<std::size_t> dist_;
};

inline std::string word(std::size_t id) { return "w" + std::to_string(id); }

/// Documents whose words come mostly from one of `topics` disjoint word
/// groups, so co-occurrence carries signal.
inline std::vector<Document> topic_corpus(std::size_t tokens, std::size_t topics, std::size_t words_per_topic,
                                          std::uint64_t seed, std::size_t doc_len = 12) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> pick_topic(0, topics - 1);
    Zipf in_topic(words_per_topic, 1.0);
    std::uniform_real_distribution<double> unit(0, 1);
    std::uniform_int_distribution<std::size_t> any(0, topics * words_per_topic - 1);
    std::vector<Document> docs;
    std::size_t produced = 0;
    while (produced < tokens) {
        const std::size_t t = pick_topic(rng);
        Document d;
        for (std::size_t i = 0; i < doc_len && produced < tokens; ++i, ++produced) {
            const std::size_t id = unit(rng) < 0.9 ? t * words_per_topic + in_topic(rng) : any(rng);
            d.tokens.push_back(word(id));
        }
        docs.push_back(std::move(d));
    }
    return docs;
}

inline std::string to_lines(const std::vector<Document>& docs) {
    std::string out;
    for (const auto& d : docs) {
        for (std::size_t i = 0; i < d.tokens.size(); ++i) {
            if (i) out += ' ';
            out += d.tokens[i];
        }
        out += '\n';
    }
    return out;
}

} // namespace streamvec::testing
