// Apache License, Version 2.0, refer to LICENSE.txt

#include "streamvec/model.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <system_error>

namespace streamvec {

void EmbeddingSnapshot::add(std::string word, std::span<const double> values) {
    if (values.size() != dim_) throw std::invalid_argument("embedding dimension mismatch for " + word);
    index_.emplace(word, words_.size());
    words_.push_back(std::move(word));
    values_.insert(values_.end(), values.begin(), values.end());
}

std::optional<std::size_t> EmbeddingSnapshot::find(const std::string& word) const {
    if (auto it = index_.find(word); it != index_.end()) return it->second;
    return std::nullopt;
}

void dump_embeddings(const EmbeddingSnapshot& snapshot, const std::string& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write embeddings to " + path);
    out << snapshot.size() << ' ' << snapshot.dim() << '\n';
    char buf[64];
    for (std::size_t i = 0; i < snapshot.size(); ++i) {
        out << snapshot.words()[i];
        for (double v : snapshot.row(i)) {
            auto res = std::to_chars(buf, buf + sizeof buf, v);
            out << ' ';
            out.write(buf, res.ptr - buf);
        }
        out << '\n';
    }
    if (!out) throw std::runtime_error("failed writing embeddings to " + path);
}

EmbeddingSnapshot load_embeddings(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open embeddings file " + path);
    std::size_t count = 0, dim = 0;
    std::string header;
    if (!std::getline(in, header)) throw std::runtime_error("empty embeddings file " + path);
    std::istringstream hs(header);
    if (!(hs >> count >> dim)) throw std::runtime_error("bad embeddings header in " + path);

    EmbeddingSnapshot snap(dim);
    std::vector<double> values(dim);
    std::string line;
    for (std::size_t i = 0; i < count; ++i) {
        if (!std::getline(in, line)) throw std::runtime_error("truncated embeddings file " + path);
        const char* p = line.data();
        const char* end = p + line.size();
        const char* sp = std::find(p, end, ' ');
        std::string word(p, sp);
        p = sp;
        for (std::size_t d = 0; d < dim; ++d) {
            while (p < end && *p == ' ') ++p;
            auto res = std::from_chars(p, end, values[d]);
            if (res.ec != std::errc()) throw std::runtime_error("bad vector value for " + word);
            p = res.ptr;
        }
        snap.add(std::move(word), values);
    }
    return snap;
}

} // namespace streamvec
