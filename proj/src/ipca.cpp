// Apache License, Version 2.0, refer to LICENSE.txt

#include "streamvec/ipca.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace streamvec {

IncrementalPca::IncrementalPca(std::size_t n_components, std::size_t dim)
    : n_components_(n_components), dim_(dim), mean_(Eigen::VectorXd::Zero(dim)) {
    if (n_components == 0) throw std::invalid_argument("PCA needs at least one component");
    if (n_components > dim)
        throw std::invalid_argument("PCA components (" + std::to_string(n_components) +
                                    ") exceed input dimension (" + std::to_string(dim) + ")");
}

void IncrementalPca::partial_fit(const Eigen::MatrixXd& batch) {
    if (static_cast<std::size_t>(batch.cols()) != dim_) throw std::invalid_argument("PCA batch has wrong width");
    const auto m = static_cast<std::size_t>(batch.rows());
    if (m == 0) return;
    if (samples_seen_ == 0 && m < n_components_)
        throw std::invalid_argument("first PCA batch must hold at least n_components rows");

    const Eigen::VectorXd batch_mean = batch.colwise().mean().transpose();
    const double n_old = static_cast<double>(samples_seen_);
    const double n_new = static_cast<double>(m);
    const double n_total = n_old + n_new;

    Eigen::MatrixXd stacked;
    if (samples_seen_ == 0) {
        stacked = batch.rowwise() - batch_mean.transpose();
    } else {
        const auto k = static_cast<Eigen::Index>(n_components_);
        stacked.resize(k + static_cast<Eigen::Index>(m) + 1, static_cast<Eigen::Index>(dim_));
        stacked.topRows(k) = singular_values_.asDiagonal() * components_;
        stacked.middleRows(k, static_cast<Eigen::Index>(m)) = batch.rowwise() - batch_mean.transpose();
        stacked.bottomRows(1) = (std::sqrt(n_old * n_new / n_total) * (mean_ - batch_mean)).transpose();
    }

    Eigen::BDCSVD<Eigen::MatrixXd> svd(stacked, Eigen::ComputeThinV);
    const auto k = static_cast<Eigen::Index>(n_components_);
    components_ = svd.matrixV().leftCols(k).transpose();
    singular_values_ = svd.singularValues().head(k);
    for (Eigen::Index r = 0; r < k; ++r) {
        Eigen::Index arg;
        components_.row(r).cwiseAbs().maxCoeff(&arg);
        if (components_(r, arg) < 0) components_.row(r) *= -1.0;
    }

    mean_ = (n_old * mean_ + n_new * batch_mean) / n_total;
    samples_seen_ += m;
}

Eigen::VectorXd IncrementalPca::transform(const Eigen::Ref<const Eigen::VectorXd>& x) const {
    return components_ * (x - mean_);
}

double IncrementalPca::orthonormality_error() const {
    if (components_.size() == 0) return 0.0;
    const Eigen::MatrixXd gram = components_ * components_.transpose();
    return (gram - Eigen::MatrixXd::Identity(gram.rows(), gram.cols())).cwiseAbs().maxCoeff();
}

} // namespace streamvec
