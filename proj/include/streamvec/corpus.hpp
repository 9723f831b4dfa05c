// Apache License, Version 2.0, refer to LICENSE.txt

#pragma once

#include <algorithm>
#include <cstddef>
#include <fstream>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace streamvec {

/// One tokenized line of the input stream (a tweet, a verse, a sentence).
struct Document {
    std::vector<std::string> tokens;

    bool operator==(const Document&) const = default;
};

using Batch = std::vector<Document>;

struct StreamConfig {
    std::string path;
    std::size_t batch_size = 32;
};

class StreamError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Characters removed from both ends of every token. '#', '@' and inner
/// hyphens are kept so hashtags and mentions survive as vocabulary.
inline constexpr std::string_view kStripChars = ".,;:!?\"'()[]{}";

bool is_valid_utf8(std::string_view text);

/// Lowercases ASCII, Latin-1, Latin Extended-A, Greek and Cyrillic letters.
/// Other code points pass through unchanged. Input must be valid UTF-8.
std::string fold_case(std::string_view text);

/// Lowercase, split on Unicode whitespace, strip kStripChars from token ends,
/// drop tokens left empty.
std::vector<std::string> tokenize(std::string_view line);

/// Window of up to `window` tokens on each side of `position`, clipped to the
/// sequence. Never contains the center position itself.
template <typename T>
std::vector<T> contexts(std::size_t position, std::span<const T> tokens, std::size_t window) {
    std::vector<T> out;
    const std::size_t lo = position >= window ? position - window : 0;
    const std::size_t hi = std::min(tokens.size(), position + window + 1);
    out.reserve(hi - lo);
    for (std::size_t i = lo; i < hi; ++i)
        if (i != position) out.push_back(tokens[i]);
    return out;
}

inline std::vector<std::string> contexts(std::size_t position, const std::vector<std::string>& tokens,
                                         std::size_t window) {
    return contexts<std::string>(position, std::span<const std::string>(tokens), window);
}

/// Single-pass reader over a one-document-per-line UTF-8 file. Holds one line
/// buffer at a time; memory does not depend on file length.
class DocumentStream {
public:
    explicit DocumentStream(StreamConfig config);

    DocumentStream(const DocumentStream&) = delete;
    DocumentStream& operator=(const DocumentStream&) = delete;
    DocumentStream(DocumentStream&&) = default;
    DocumentStream& operator=(DocumentStream&&) = default;

    /// Next decodable line, or nullopt at end of file. Lines that are not
    /// valid UTF-8 are skipped and counted.
    std::optional<Document> next();

    /// Up to batch_size documents; empty at end of stream.
    Batch next_batch();

    std::size_t lines_read() const { return lines_read_; }
    std::size_t invalid_lines() const { return invalid_lines_; }
    std::size_t documents_yielded() const { return yielded_; }
    const StreamConfig& config() const { return config_; }

private:
    StreamConfig config_;
    std::ifstream in_;
    std::string line_;
    std::size_t lines_read_ = 0;
    std::size_t invalid_lines_ = 0;
    std::size_t yielded_ = 0;
};

} // namespace streamvec
