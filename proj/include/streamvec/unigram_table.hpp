// Apache License, Version 2.0, refer to LICENSE.txt

#pragma once

#include "streamvec/vocab.hpp"

#include <cstdint>
#include <random>
#include <span>
#include <stdexcept>
#include <vector>

namespace streamvec {

class SamplingError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Adaptive unigram table for negative sampling on a stream.
///
/// Each occurrence of a slot adds F = f^alpha - (f-1)^alpha to the running
/// mass z, where f is the slot's occurrence count. While the table is filling,
/// F copies are appended (fractional part by a Bernoulli draw). Once full,
/// round(capacity * F / z) uniformly chosen positions are overwritten, which
/// keeps each slot's share of the table close to f^alpha / z.
class UnigramTable {
public:
    UnigramTable(std::size_t capacity, double alpha, std::uint64_t seed);

    void update(Slot slot);

    /// Forget the occurrence count of a recycled slot. Table entries that
    /// still hold the slot now stand for the new word.
    void reset_slot(Slot slot);

    /// `count` draws; a draw hitting `exclude` is redrawn up to 100 times and
    /// then accepted.
    std::vector<Slot> sample(std::size_t count, std::span<const Slot> exclude = {});
    void sample_into(std::vector<Slot>& out, std::size_t count, std::span<const Slot> exclude = {});

    std::size_t size() const { return table_.size(); }
    std::size_t capacity() const { return capacity_; }
    bool full() const { return table_.size() == capacity_; }
    double alpha() const { return alpha_; }
    double mass() const { return z_; }
    std::uint64_t occurrences(Slot slot) const { return slot < freqs_.size() ? freqs_[slot] : 0; }
    std::span<const Slot> entries() const { return table_; }

    static constexpr int kMaxRedraws = 100;

private:
    std::size_t random_rounding(double x);

    std::size_t capacity_;
    double alpha_;
    double z_ = 0.0;
    std::vector<Slot> table_;
    std::vector<std::uint64_t> freqs_;
    std::mt19937_64 rng_;
};

} // namespace streamvec
