// Apache License, Version 2.0, refer to LICENSE.txt

#pragma once

#include <algorithm>
#include <cassert>
#include <cmath>
#include <concepts>
#include <span>
#include <vector>

namespace streamvec {

// Scores are clamped to this range before exp().
inline constexpr double kMaxScore = 30.0;

template <std::floating_point Real>
Real clamp_score(Real x) {
    return std::clamp(x, static_cast<Real>(-kMaxScore), static_cast<Real>(kMaxScore));
}

template <std::floating_point Real>
Real sigmoid(Real x) {
    return Real(1) / (Real(1) + std::exp(-clamp_score(x)));
}

/// -log(sigmoid(x)) evaluated without cancellation.
template <std::floating_point Real>
Real neg_log_sigmoid(Real x) {
    return std::log1p(std::exp(-clamp_score(x)));
}

template <std::floating_point Real>
Real dot(std::span<const Real> a, std::span<const Real> b) {
    assert(a.size() == b.size());
    Real s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

/// Negative-sampling loss of one input vector against a positive output row
/// and a set of negative output rows:
///   L = -log s(u_pos . h) - sum_n log s(-u_n . h)
/// Loss is returned for the parameters before this call. The update is one
/// exact gradient step of rate `lr` on `output_pos`, every negative row, and
/// the input, computed from the pre-update values (repeated negative rows
/// receive each of their contributions). dL/dh is written to `grad_input`
/// and NOT applied; the caller distributes it.
template <std::floating_point Real>
Real negative_sampling_update(std::span<const Real> input, std::span<Real> output_pos,
                              std::span<const std::span<Real>> output_negs, Real lr,
                              std::span<Real> grad_input) {
    const std::size_t dim = input.size();
    std::fill(grad_input.begin(), grad_input.end(), Real(0));

    thread_local std::vector<Real> coeff;
    coeff.resize(output_negs.size() + 1);

    const Real pos_score = dot<Real>(input, output_pos);
    Real loss = neg_log_sigmoid(pos_score);
    coeff[0] = sigmoid(pos_score) - Real(1);
    for (std::size_t n = 0; n < output_negs.size(); ++n) {
        const Real s = dot<Real>(input, output_negs[n]);
        loss += neg_log_sigmoid(-s);
        coeff[n + 1] = sigmoid(s);
    }

    for (std::size_t d = 0; d < dim; ++d) grad_input[d] += coeff[0] * output_pos[d];
    for (std::size_t n = 0; n < output_negs.size(); ++n)
        for (std::size_t d = 0; d < dim; ++d) grad_input[d] += coeff[n + 1] * output_negs[n][d];

    for (std::size_t d = 0; d < dim; ++d) output_pos[d] -= lr * coeff[0] * input[d];
    for (std::size_t n = 0; n < output_negs.size(); ++n)
        for (std::size_t d = 0; d < dim; ++d) output_negs[n][d] -= lr * coeff[n + 1] * input[d];
    return loss;
}

/// Skip-gram step: target input row v_t predicts context output row u_c.
template <std::floating_point Real>
Real sgns_step(std::span<Real> target_in, std::span<Real> context_out,
               std::span<const std::span<Real>> negatives_out, Real lr) {
    thread_local std::vector<Real> grad;
    grad.resize(target_in.size());
    // The input must be read-only while output rows change; in/out matrices are distinct.
    const Real loss = negative_sampling_update<Real>(std::span<const Real>(target_in), context_out,
                                                     negatives_out, lr, grad);
    for (std::size_t d = 0; d < target_in.size(); ++d) target_in[d] -= lr * grad[d];
    return loss;
}

/// CBOW step: the mean of the context input rows predicts the target output
/// row. dL/dh is divided equally over the contributing context rows.
template <std::floating_point Real>
Real cbow_step(std::span<const std::span<Real>> contexts_in, std::span<Real> target_out,
               std::span<const std::span<Real>> negatives_out, Real lr) {
    assert(!contexts_in.empty());
    const std::size_t dim = target_out.size();
    thread_local std::vector<Real> mean;
    thread_local std::vector<Real> grad;
    mean.assign(dim, Real(0));
    grad.resize(dim);
    for (const auto& row : contexts_in)
        for (std::size_t d = 0; d < dim; ++d) mean[d] += row[d];
    const Real inv = Real(1) / static_cast<Real>(contexts_in.size());
    for (auto& m : mean) m *= inv;

    const Real loss = negative_sampling_update<Real>(std::span<const Real>(mean), target_out, negatives_out,
                                                     lr, grad);
    for (const auto& row : contexts_in)
        for (std::size_t d = 0; d < dim; ++d) row[d] -= lr * grad[d] * inv;
    return loss;
}

} // namespace streamvec
