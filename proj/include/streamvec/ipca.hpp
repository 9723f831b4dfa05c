// Apache License, Version 2.0, refer to LICENSE.txt

#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <cstdint>

namespace streamvec {

/// Incremental PCA by sequential Karhunen-Loeve updates.
///
/// The current basis is kept as (singular values x components). A new batch
/// is centered on its own mean, stacked under the scaled basis together with
/// a mean-shift correction row, and re-decomposed with a thin SVD; the top
/// rows of V^T become the new components. Components are sign-normalized so
/// the largest-magnitude coordinate of each is positive.
class IncrementalPca {
public:
    IncrementalPca(std::size_t n_components, std::size_t dim);

    /// Rows of `batch` are samples. The first batch must hold at least
    /// n_components rows.
    void partial_fit(const Eigen::MatrixXd& batch);

    /// (x - mean) projected on the components.
    Eigen::VectorXd transform(const Eigen::Ref<const Eigen::VectorXd>& x) const;

    std::size_t n_components() const { return n_components_; }
    std::size_t dim() const { return dim_; }
    std::uint64_t samples_seen() const { return samples_seen_; }
    bool fitted() const { return samples_seen_ > 0; }

    const Eigen::MatrixXd& components() const { return components_; }
    const Eigen::VectorXd& mean() const { return mean_; }
    const Eigen::VectorXd& singular_values() const { return singular_values_; }

    /// max |C C^T - I| over the component Gram matrix.
    double orthonormality_error() const;

private:
    std::size_t n_components_;
    std::size_t dim_;
    std::uint64_t samples_seen_ = 0;
    Eigen::VectorXd mean_;
    Eigen::MatrixXd components_;
    Eigen::VectorXd singular_values_;
};

} // namespace streamvec
