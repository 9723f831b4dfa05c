// Apache License, Version 2.0, refer to LICENSE.txt

#include "streamvec/vocab.hpp"

#include <limits>
#include <stdexcept>

namespace streamvec {

BoundedVocab::BoundedVocab(std::size_t capacity) : capacity_(capacity) {
    if (capacity == 0) throw std::invalid_argument("vocabulary capacity must be positive");
    if (capacity > std::numeric_limits<Slot>::max())
        throw std::invalid_argument("vocabulary capacity exceeds slot range");
}

Slot BoundedVocab::take_free_slot() {
    if (!recycled_.empty()) {
        Slot s = recycled_.top();
        recycled_.pop();
        return s;
    }
    Slot s = high_water_++;
    words_.resize(high_water_);
    raw_.resize(high_water_, 0);
    return s;
}

VocabEvent BoundedVocab::observe(const std::string& word) {
    if (word.empty()) throw std::invalid_argument("empty word");
    VocabEvent ev;
    if (auto it = index_.find(word); it != index_.end()) {
        const Slot s = it->second;
        by_count_.erase({raw_[s], s});
        ++raw_[s];
        by_count_.insert({raw_[s], s});
        ev.kind = VocabEventKind::incremented;
        ev.slot = s;
        return ev;
    }

    if (index_.size() < capacity_) {
        const Slot s = take_free_slot();
        words_[s] = word;
        raw_[s] = base_ + 1;
        by_count_.insert({raw_[s], s});
        index_.emplace(word, s);
        ev.kind = VocabEventKind::inserted;
        ev.slot = s;
        return ev;
    }

    // Full: decrement every counter and evict those reaching zero.
    ++base_;
    while (!by_count_.empty() && by_count_.begin()->first <= base_) {
        const Slot s = by_count_.begin()->second;
        by_count_.erase(by_count_.begin());
        ev.evicted_words.push_back(words_[s]);
        ev.evicted_slots.push_back(s);
        index_.erase(words_[s]);
        words_[s].clear();
        raw_[s] = 0;
        recycled_.push(s);
    }
    if (ev.evicted_slots.empty()) {
        ev.kind = VocabEventKind::dropped;
        return ev;
    }
    const Slot s = take_free_slot();
    words_[s] = word;
    raw_[s] = base_ + 1;
    by_count_.insert({raw_[s], s});
    index_.emplace(word, s);
    ev.kind = VocabEventKind::evicted_then_inserted;
    ev.slot = s;
    return ev;
}

std::optional<Slot> BoundedVocab::slot_of(const std::string& word) const {
    if (auto it = index_.find(word); it != index_.end()) return it->second;
    return std::nullopt;
}

std::uint64_t BoundedVocab::frequency(const std::string& word) const {
    auto s = slot_of(word);
    return s ? raw_[*s] - base_ : 0;
}

std::uint64_t BoundedVocab::counter_at(Slot slot) const {
    return occupied(slot) ? raw_[slot] - base_ : 0;
}

std::vector<std::pair<std::string, Slot>> BoundedVocab::snapshot() const {
    std::vector<std::pair<std::string, Slot>> out;
    out.reserve(index_.size());
    for_each_resident([&](const std::string& w, Slot s) { out.emplace_back(w, s); });
    return out;
}

std::vector<std::tuple<std::string, Slot, std::uint64_t>> BoundedVocab::state() const {
    std::vector<std::tuple<std::string, Slot, std::uint64_t>> out;
    out.reserve(index_.size());
    for_each_resident([&](const std::string& w, Slot s) { out.emplace_back(w, s, raw_[s] - base_); });
    return out;
}

} // namespace streamvec
