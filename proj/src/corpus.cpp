// Apache License, Version 2.0, refer to LICENSE.txt

#include "streamvec/corpus.hpp"

#include <cstdint>
#include <utility>

namespace streamvec {
namespace {

// Decodes one code point starting at `pos`. Assumes valid UTF-8.
char32_t decode(std::string_view s, std::size_t& pos) {
    const auto b0 = static_cast<unsigned char>(s[pos]);
    if (b0 < 0x80) {
        ++pos;
        return b0;
    }
    int len = b0 >= 0xF0 ? 4 : b0 >= 0xE0 ? 3 : 2;
    char32_t cp = b0 & (0x3F >> (len - 1));
    for (int i = 1; i < len; ++i)
        cp = (cp << 6) | (static_cast<unsigned char>(s[pos + i]) & 0x3F);
    pos += len;
    return cp;
}

void encode(char32_t cp, std::string& out) {
    if (cp < 0x80) {
        out.push_back(static_cast<char>(cp));
    } else if (cp < 0x800) {
        out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else if (cp < 0x10000) {
        out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else {
        out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    }
}

bool is_space(char32_t cp) {
    switch (cp) {
    case 0x09: case 0x0A: case 0x0B: case 0x0C: case 0x0D: case 0x20:
    case 0x85: case 0xA0: case 0x1680: case 0x2028: case 0x2029:
    case 0x202F: case 0x205F: case 0x3000:
        return true;
    default:
        return cp >= 0x2000 && cp <= 0x200A;
    }
}

char32_t lower(char32_t cp) {
    if (cp >= 'A' && cp <= 'Z') return cp + 0x20;
    if (cp < 0xC0) return cp;
    if ((cp >= 0xC0 && cp <= 0xDE && cp != 0xD7)) return cp + 0x20;
    // Latin Extended-A pairs (even upper, odd lower), with the odd-offset block.
    if (cp == 0x130) return 'i';
    if (cp >= 0x100 && cp <= 0x137) return cp | 1;
    if (cp >= 0x139 && cp <= 0x148) return (cp & 1) ? cp + 1 : cp;
    if (cp >= 0x14A && cp <= 0x177) return cp | 1;
    if (cp == 0x178) return 0xFF;
    if (cp >= 0x179 && cp <= 0x17E) return (cp & 1) ? cp + 1 : cp;
    // Greek capitals.
    if (cp >= 0x391 && cp <= 0x3AB && cp != 0x3A2) return cp + 0x20;
    // Cyrillic.
    if (cp >= 0x410 && cp <= 0x42F) return cp + 0x20;
    if (cp >= 0x400 && cp <= 0x40F) return cp + 0x50;
    return cp;
}

std::string_view strip(std::string_view tok) {
    const auto first = tok.find_first_not_of(kStripChars);
    if (first == std::string_view::npos) return {};
    const auto last = tok.find_last_not_of(kStripChars);
    return tok.substr(first, last - first + 1);
}

} // namespace

bool is_valid_utf8(std::string_view s) {
    std::size_t i = 0;
    while (i < s.size()) {
        const auto b0 = static_cast<unsigned char>(s[i]);
        std::size_t len;
        char32_t min_cp;
        if (b0 < 0x80) {
            ++i;
            continue;
        } else if ((b0 & 0xE0) == 0xC0) {
            len = 2;
            min_cp = 0x80;
        } else if ((b0 & 0xF0) == 0xE0) {
            len = 3;
            min_cp = 0x800;
        } else if ((b0 & 0xF8) == 0xF0) {
            len = 4;
            min_cp = 0x10000;
        } else {
            return false;
        }
        if (i + len > s.size()) return false;
        char32_t cp = b0 & (0x3F >> (len - 1));
        for (std::size_t k = 1; k < len; ++k) {
            const auto b = static_cast<unsigned char>(s[i + k]);
            if ((b & 0xC0) != 0x80) return false;
            cp = (cp << 6) | (b & 0x3F);
        }
        if (cp < min_cp || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) return false;
        i += len;
    }
    return true;
}

std::string fold_case(std::string_view text) {
    std::string out;
    out.reserve(text.size());
    std::size_t pos = 0;
    while (pos < text.size()) encode(lower(decode(text, pos)), out);
    return out;
}

std::vector<std::string> tokenize(std::string_view line) {
    std::vector<std::string> tokens;
    std::string current;
    auto flush = [&] {
        if (current.empty()) return;
        auto stripped = strip(current);
        if (!stripped.empty()) tokens.emplace_back(stripped);
        current.clear();
    };
    std::size_t pos = 0;
    while (pos < line.size()) {
        const char32_t cp = decode(line, pos);
        if (is_space(cp))
            flush();
        else
            encode(lower(cp), current);
    }
    flush();
    return tokens;
}

DocumentStream::DocumentStream(StreamConfig config) : config_(std::move(config)) {
    if (config_.batch_size == 0) throw StreamError("batch size must be at least 1");
    in_.open(config_.path, std::ios::binary);
    if (!in_) throw StreamError("cannot open corpus file: " + config_.path);
}

std::optional<Document> DocumentStream::next() {
    while (std::getline(in_, line_)) {
        ++lines_read_;
        if (!line_.empty() && line_.back() == '\r') line_.pop_back();
        if (!is_valid_utf8(line_)) {
            ++invalid_lines_;
            continue;
        }
        ++yielded_;
        return Document{tokenize(line_)};
    }
    return std::nullopt;
}

Batch DocumentStream::next_batch() {
    Batch batch;
    batch.reserve(config_.batch_size);
    while (batch.size() < config_.batch_size) {
        auto doc = next();
        if (!doc) break;
        batch.push_back(std::move(*doc));
    }
    return batch;
}

} // namespace streamvec
