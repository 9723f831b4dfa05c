// Apache License, Version 2.0, refer to LICENSE.txt

#include "streamvec/vocab.hpp"
#include "support.hpp"

#include <doctest.h>

#include <map>
#include <random>
#include <set>

using namespace streamvec;
using streamvec::testing::Zipf;
using streamvec::testing::word;

namespace {

// Literal transcription of the sketch: explicit counters per slot, a full
// decrement pass, lowest freed slot for the newcomer.
class ReferenceVocab {
public:
    explicit ReferenceVocab(std::size_t k) : slots_(k) {}

    void observe(const std::string& w) {
        for (auto& s : slots_)
            if (s.count && s.word == w) {
                ++s.count;
                return;
            }
        for (auto& s : slots_)
            if (!s.count) {
                s = {w, 1};
                return;
            }
        std::optional<std::size_t> freed;
        for (std::size_t i = 0; i < slots_.size(); ++i)
            if (--slots_[i].count == 0 && !freed) freed = i;
        if (freed) slots_[*freed] = {w, 1};
    }

    std::vector<std::tuple<std::string, Slot, std::uint64_t>> state() const {
        std::vector<std::tuple<std::string, Slot, std::uint64_t>> out;
        for (std::size_t i = 0; i < slots_.size(); ++i)
            if (slots_[i].count) out.emplace_back(slots_[i].word, static_cast<Slot>(i), slots_[i].count);
        return out;
    }

private:
    struct Entry {
        std::string word;
        std::uint64_t count = 0;
    };
    std::vector<Entry> slots_;
};

std::map<std::string, std::uint64_t> as_map(const BoundedVocab& v) {
    std::map<std::string, std::uint64_t> m;
    for (const auto& [w, s, c] : v.state()) m[w] = c;
    return m;
}

} // namespace

TEST_CASE("sketch examples") {
    {
        BoundedVocab v(2);
        v.observe("a");
        v.observe("b");
        v.observe("a");
        CHECK(as_map(v) == std::map<std::string, std::uint64_t>{{"a", 2}, {"b", 1}});
    }
    {
        BoundedVocab v(2);
        CHECK(v.observe("a").kind == VocabEventKind::inserted);
        v.observe("b");
        const auto ev = v.observe("c");
        CHECK(ev.kind == VocabEventKind::evicted_then_inserted);
        CHECK(ev.evicted_words.size() == 2);
        CHECK(ev.slot == Slot{0});
        CHECK(as_map(v) == std::map<std::string, std::uint64_t>{{"c", 1}});
    }
    {
        BoundedVocab v(2);
        for (const char* w : {"a", "a", "b"}) v.observe(w);
        const auto ev = v.observe("c");
        CHECK(ev.evicted_words == std::vector<std::string>{"b"});
        CHECK(ev.slot == Slot{1});
        CHECK(as_map(v) == std::map<std::string, std::uint64_t>{{"a", 1}, {"c", 1}});
    }
    {
        BoundedVocab v(2);
        for (const char* w : {"a", "a", "b", "b"}) v.observe(w);
        const auto ev = v.observe("c");
        CHECK(ev.kind == VocabEventKind::dropped);
        CHECK_FALSE(ev.slot);
        CHECK(as_map(v) == std::map<std::string, std::uint64_t>{{"a", 1}, {"b", 1}});
    }
}

TEST_CASE("slot lookup") {
    BoundedVocab v(3);
    v.observe("a");
    CHECK(v.slot_of("a") == Slot{0});
    CHECK_FALSE(v.slot_of("unseen"));
    for (int i = 0; i < 1000; ++i) {
        v.observe("a");
        REQUIRE(v.slot_of("a") == Slot{0});
    }
    CHECK(v.frequency("a") == 1001);
}

TEST_CASE("frequency") {
    BoundedVocab v(3);
    for (int i = 0; i < 3; ++i) v.observe("a");
    CHECK(v.frequency("a") == 3);
    BoundedVocab e(1);
    e.observe("x");
    e.observe("y");
    CHECK(e.frequency("x") == 0);
    CHECK(e.frequency("y") == 1);
    CHECK_THROWS_AS(e.observe(""), std::invalid_argument);
    CHECK_THROWS(BoundedVocab(0));
}

TEST_CASE("matches the reference sketch on random streams") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 40; ++trial) {
        const std::size_t k = 1 + rng() % 12;
        const std::size_t alphabet = 2 + rng() % 40;
        Zipf z(alphabet, 0.6 + 0.1 * static_cast<double>(trial % 10));
        BoundedVocab v(k);
        ReferenceVocab ref(k);
        for (int i = 0; i < 3000; ++i) {
            const auto w = word(z(rng));
            v.observe(w);
            ref.observe(w);
            if (i % 97 == 0) REQUIRE(v.state() == ref.state());
        }
        REQUIRE(v.state() == ref.state());
    }
}

TEST_CASE("occupancy invariants") {
    std::mt19937_64 rng(5);
    Zipf z(500, 1.1);
    BoundedVocab v(50);
    for (int i = 0; i < 20000; ++i) {
        v.observe(word(z(rng)));
        if (i % 250 != 0) continue;
        const auto st = v.state();
        REQUIRE(st.size() <= v.capacity());
        REQUIRE(v.size() + v.free_slots() == v.capacity());
        std::set<Slot> slots;
        for (const auto& [w, s, c] : st) {
            REQUIRE(s < v.capacity());
            REQUIRE(c > 0);
            REQUIRE(v.slot_of(w) == s);
            REQUIRE(v.word_at(s) == w);
            slots.insert(s);
        }
        REQUIRE(slots.size() == st.size());
    }
}

TEST_CASE("heavy hitters stay resident and estimates are bounded") {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 5; ++trial) {
        const std::size_t k = 100, n = 20000;
        Zipf z(3000, 1.05);
        BoundedVocab v(k);
        std::map<std::string, std::uint64_t> exact;
        for (std::size_t i = 0; i < n; ++i) {
            const auto w = word(z(rng));
            ++exact[w];
            v.observe(w);
        }
        const double slack = static_cast<double>(n) / static_cast<double>(k + 1);
        for (const auto& [w, c] : exact) {
            if (static_cast<double>(c) > slack) REQUIRE(v.slot_of(w));
            const auto est = v.frequency(w);
            REQUIRE(est <= c);
            if (est > 0) REQUIRE(static_cast<double>(c) - slack <= static_cast<double>(est));
        }
    }
}

TEST_CASE("identical streams give identical states") {
    auto run = [] {
        std::mt19937_64 rng(23);
        Zipf z(200, 1.0);
        BoundedVocab v(30);
        for (int i = 0; i < 5000; ++i) v.observe(word(z(rng)));
        return v.state();
    };
    CHECK(run() == run());
}
