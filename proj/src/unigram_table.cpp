// Apache License, Version 2.0, refer to LICENSE.txt

#include "streamvec/unigram_table.hpp"

#include <algorithm>
#include <cmath>

namespace streamvec {

UnigramTable::UnigramTable(std::size_t capacity, double alpha, std::uint64_t seed)
    : capacity_(capacity), alpha_(alpha), rng_(seed) {
    if (capacity == 0) throw std::invalid_argument("unigram table size must be positive");
    if (!(alpha > 0.0 && alpha <= 1.0)) throw std::invalid_argument("alpha must be in (0, 1]");
}

std::size_t UnigramTable::random_rounding(double x) {
    const double whole = std::floor(x);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    return static_cast<std::size_t>(whole) + (unit(rng_) < x - whole ? 1 : 0);
}

void UnigramTable::update(Slot slot) {
    if (slot >= freqs_.size()) freqs_.resize(static_cast<std::size_t>(slot) + 1, 0);
    const auto f = static_cast<double>(++freqs_[slot]);
    const double increment = alpha_ == 1.0 ? 1.0 : std::pow(f, alpha_) - std::pow(f - 1.0, alpha_);
    z_ += increment;

    if (table_.size() < capacity_) {
        const std::size_t copies = std::min(random_rounding(increment), capacity_ - table_.size());
        table_.insert(table_.end(), copies, slot);
    } else {
        const std::size_t writes = random_rounding(static_cast<double>(capacity_) * increment / z_);
        std::uniform_int_distribution<std::size_t> pos(0, capacity_ - 1);
        for (std::size_t j = 0; j < writes; ++j) table_[pos(rng_)] = slot;
    }
}

void UnigramTable::reset_slot(Slot slot) {
    if (slot < freqs_.size()) freqs_[slot] = 0;
}

void UnigramTable::sample_into(std::vector<Slot>& out, std::size_t count, std::span<const Slot> exclude) {
    out.clear();
    if (count == 0) return;
    if (table_.empty()) throw SamplingError("negative sampling from an empty unigram table");
    std::uniform_int_distribution<std::size_t> pos(0, table_.size() - 1);
    for (std::size_t i = 0; i < count; ++i) {
        Slot s = table_[pos(rng_)];
        for (int attempt = 0; attempt < kMaxRedraws; ++attempt) {
            if (std::find(exclude.begin(), exclude.end(), s) == exclude.end()) break;
            s = table_[pos(rng_)];
        }
        out.push_back(s);
    }
}

std::vector<Slot> UnigramTable::sample(std::size_t count, std::span<const Slot> exclude) {
    std::vector<Slot> out;
    out.reserve(count);
    sample_into(out, count, exclude);
    return out;
}

} // namespace streamvec
