// Apache License, Version 2.0, refer to LICENSE.txt

#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <queue>
#include <set>
#include <string>
#include <tuple>
#include <unordered_map>
#include <utility>
#include <vector>

namespace streamvec {

using Slot = std::uint32_t;

enum class VocabEventKind { inserted, incremented, evicted_then_inserted, dropped };

struct VocabEvent {
    VocabEventKind kind = VocabEventKind::dropped;
    std::optional<Slot> slot;
    std::vector<std::string> evicted_words;
    std::vector<Slot> evicted_slots;
};

/// Fixed-capacity word <-> slot map backed by a Misra-Gries sketch.
///
/// A resident word keeps its slot until it is evicted. When the map is full
/// and an unseen word arrives, every counter is decremented once; words that
/// reach zero are evicted and the incoming word takes the lowest freed slot.
/// If nothing reaches zero the word is dropped.
///
/// The decrement-all step is O(log n): counters are stored relative to a
/// shared base that is bumped instead of touching every entry.
class BoundedVocab {
public:
    explicit BoundedVocab(std::size_t capacity);

    VocabEvent observe(const std::string& word);

    std::optional<Slot> slot_of(const std::string& word) const;

    /// Misra-Gries estimate; 0 when not resident.
    std::uint64_t frequency(const std::string& word) const;
    std::uint64_t counter_at(Slot slot) const;

    bool occupied(Slot slot) const { return slot < words_.size() && !words_[slot].empty(); }
    const std::string& word_at(Slot slot) const { return words_[slot]; }

    std::size_t size() const { return index_.size(); }
    std::size_t capacity() const { return capacity_; }
    std::size_t free_slots() const { return capacity_ - index_.size(); }
    /// One past the highest slot ever handed out.
    std::size_t slot_high_water() const { return high_water_; }

    /// (word, slot) pairs ordered by slot.
    std::vector<std::pair<std::string, Slot>> snapshot() const;

    /// (word, slot, counter) ordered by slot; used for state comparisons.
    std::vector<std::tuple<std::string, Slot, std::uint64_t>> state() const;

    template <typename Fn>
    void for_each_resident(Fn&& fn) const {
        for (Slot s = 0; s < high_water_; ++s)
            if (!words_[s].empty()) fn(words_[s], s);
    }

private:
    Slot take_free_slot();

    std::size_t capacity_;
    std::unordered_map<std::string, Slot> index_;
    std::vector<std::string> words_;
    std::vector<std::uint64_t> raw_;
    std::set<std::pair<std::uint64_t, Slot>> by_count_;
    std::priority_queue<Slot, std::vector<Slot>, std::greater<>> recycled_;
    std::uint64_t base_ = 0;
    Slot high_water_ = 0;
};

} // namespace streamvec
