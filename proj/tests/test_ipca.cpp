// Apache License, Version 2.0, refer to LICENSE.txt

#include "streamvec/ipca.hpp"

#include <doctest.h>

#include <Eigen/SVD>

#include <algorithm>
#include <random>

using namespace streamvec;
using Eigen::MatrixXd;
using Eigen::VectorXd;

namespace {

MatrixXd random_matrix(std::mt19937_64& rng, Eigen::Index rows, Eigen::Index cols) {
    std::normal_distribution<double> g(0, 1);
    MatrixXd m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i)
        for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = g(rng);
    return m;
}

// Largest principal angle between the row spaces of two orthonormal bases.
double max_angle(const MatrixXd& a, const MatrixXd& b) {
    Eigen::JacobiSVD<MatrixXd> svd(a * b.transpose());
    const double c = std::clamp(svd.singularValues().minCoeff(), -1.0, 1.0);
    return std::acos(c);
}

MatrixXd projector(const MatrixXd& c) { return c.transpose() * c; }

} // namespace

TEST_CASE("one batch reproduces batch PCA") {
    std::mt19937_64 rng(1);
    const MatrixXd x = random_matrix(rng, 40, 8) * random_matrix(rng, 8, 8);
    IncrementalPca p(3, 8);
    p.partial_fit(x);

    const VectorXd mean = x.colwise().mean();
    const MatrixXd centered = x.rowwise() - mean.transpose();
    Eigen::JacobiSVD<MatrixXd> svd(centered, Eigen::ComputeThinV);
    CHECK((p.mean() - mean).norm() < 1e-12);
    for (int i = 0; i < 3; ++i) {
        CHECK(p.singular_values()(i) == doctest::Approx(svd.singularValues()(i)).epsilon(1e-10));
        CHECK(std::abs(p.components().row(i).dot(svd.matrixV().col(i))) == doctest::Approx(1.0).epsilon(1e-10));
    }
    CHECK(p.samples_seen() == 40);
}

TEST_CASE("batched updates are exact for data inside a k-dimensional affine subspace") {
    std::mt19937_64 rng(2);
    const MatrixXd basis = random_matrix(rng, 3, 12);
    const VectorXd offset = random_matrix(rng, 12, 1);
    MatrixXd all(0, 12);
    IncrementalPca p(3, 12);
    for (int b = 0; b < 6; ++b) {
        MatrixXd batch = random_matrix(rng, 7, 3) * basis;
        batch.rowwise() += offset.transpose();
        p.partial_fit(batch);
        MatrixXd grown(all.rows() + batch.rows(), 12);
        grown << all, batch;
        all = grown;
    }
    const VectorXd mean = all.colwise().mean();
    const MatrixXd centered = all.rowwise() - mean.transpose();
    Eigen::JacobiSVD<MatrixXd> svd(centered, Eigen::ComputeThinV);
    const MatrixXd truth = svd.matrixV().leftCols(3).transpose();
    CHECK((p.mean() - mean).norm() < 1e-10);
    CHECK((projector(p.components()) - projector(truth)).norm() < 1e-8);
    for (int i = 0; i < 3; ++i)
        CHECK(p.singular_values()(i) == doctest::Approx(svd.singularValues()(i)).epsilon(1e-9));
}

TEST_CASE("components stay orthonormal and sign-normalized") {
    std::mt19937_64 rng(3);
    IncrementalPca p(5, 30);
    for (int b = 0; b < 20; ++b) {
        p.partial_fit(random_matrix(rng, 5 + b % 4, 30));
        REQUIRE(p.orthonormality_error() < 1e-6);
        for (Eigen::Index i = 0; i < 5; ++i) {
            Eigen::Index arg;
            p.components().row(i).cwiseAbs().maxCoeff(&arg);
            REQUIRE(p.components()(i, arg) > 0);
        }
    }
}

TEST_CASE("hand-built projector") {
    // Points at +-2 e1 and +-1 e2: components are e1 then e2, mean is zero.
    MatrixXd x(4, 3);
    x << 2, 0, 0, -2, 0, 0, 0, 1, 0, 0, -1, 0;
    IncrementalPca p(2, 3);
    p.partial_fit(x);
    MatrixXd expected(2, 3);
    expected << 1, 0, 0, 0, 1, 0;
    CHECK((p.components() - expected).norm() < 1e-12);
    const VectorXd y = p.transform(VectorXd::Map(std::vector<double>{0.5, -3, 7}.data(), 3));
    CHECK(y(0) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(y(1) == doctest::Approx(-3.0).epsilon(1e-12));
}

TEST_CASE("transform is the centered product") {
    std::mt19937_64 rng(4);
    IncrementalPca p(4, 10);
    p.partial_fit(random_matrix(rng, 20, 10));
    p.partial_fit(random_matrix(rng, 9, 10));
    const VectorXd v = random_matrix(rng, 10, 1);
    const VectorXd y = p.transform(v);
    for (Eigen::Index i = 0; i < 4; ++i) {
        double s = 0;
        for (Eigen::Index d = 0; d < 10; ++d) s += p.components()(i, d) * (v(d) - p.mean()(d));
        CHECK(std::abs(y(i) - s) < 1e-9);
    }
}

TEST_CASE("a repeated batch moves the basis less than a new one") {
    std::mt19937_64 rng(5);
    const MatrixXd a = random_matrix(rng, 30, 15);
    const MatrixXd b = random_matrix(rng, 30, 15);

    IncrementalPca same(4, 15), diff(4, 15);
    same.partial_fit(a);
    diff.partial_fit(a);
    const MatrixXd start = same.components();
    same.partial_fit(a);
    diff.partial_fit(b);
    CHECK(max_angle(start, same.components()) < max_angle(start, diff.components()));

    // Second pass over the same new batch drifts less than the first.
    IncrementalPca seq(4, 15);
    seq.partial_fit(a);
    const MatrixXd c0 = seq.components();
    seq.partial_fit(b);
    const MatrixXd c1 = seq.components();
    seq.partial_fit(b);
    CHECK(max_angle(c1, seq.components()) < max_angle(c0, c1));
}

TEST_CASE("argument checks") {
    CHECK_THROWS(IncrementalPca(0, 4));
    CHECK_THROWS(IncrementalPca(5, 4));
    IncrementalPca p(3, 4);
    CHECK_THROWS(p.partial_fit(MatrixXd::Ones(2, 4)));
    CHECK_THROWS(p.partial_fit(MatrixXd::Ones(5, 3)));
    CHECK_FALSE(p.fitted());
}
