// Apache License, Version 2.0, refer to LICENSE.txt

#pragma once

#include "streamvec/wcm.hpp"

#include <map>
#include <string>
#include <vector>

namespace streamvec::testing {

struct OfflineCounts {
    std::uint64_t total = 0;
    std::map<std::pair<std::string, std::string>, std::uint64_t> pairs;
    std::map<std::string, std::uint64_t> words, contexts;
};

// Brute-force window count over the whole corpus.
inline OfflineCounts offline_counts(const std::vector<Document>& docs, std::size_t window) {
    OfflineCounts o;
    for (const auto& d : docs) {
        const auto& t = d.tokens;
        for (std::size_t i = 0; i < t.size(); ++i) {
            ++o.total;
            ++o.words[t[i]];
            for (std::size_t j = 0; j < t.size(); ++j) {
                const std::size_t gap = i > j ? i - j : j - i;
                if (gap == 0 || gap > window) continue;
                ++o.pairs[{t[i], t[j]}];
                ++o.contexts[t[j]];
            }
        }
    }
    return o;
}

inline WcmCounters to_slots(const OfflineCounts& o, const WcmModel& m) {
    WcmCounters c;
    c.total = o.total;
    for (const auto& [w, n] : o.words) c.words[*m.vocab().slot_of(w)] = n;
    for (const auto& [x, n] : o.contexts) c.contexts[*m.context_vocab().slot_of(x)] = n;
    for (const auto& [p, n] : o.pairs) c.pairs[{*m.vocab().slot_of(p.first), *m.context_vocab().slot_of(p.second)}] = n;
    return c;
}

} // namespace streamvec::testing
