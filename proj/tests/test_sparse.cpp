#include <doctest.h>

#include <random>

#include "nwm/errors.hpp"
#include "nwm/sparse.hpp"
#include "support/oracles.hpp"

using namespace nwm;

TEST_CASE("from_upper_triplets mirrors and coalesces") {
    // Duplicates on (0,1) must sum; the mirrored (1,0) must match exactly.
    std::vector<Triplet> triplets = {
        {0, 0, 2.0}, {0, 1, -0.5}, {0, 1, -0.25}, {1, 1, 3.0}, {1, 2, 1.5}, {2, 2, 4.0},
    };
    const SparseSymMatrix m = SparseSymMatrix::from_upper_triplets(3, triplets);
    CHECK(m.at(0, 1) == -0.75);
    CHECK(m.at(1, 0) == -0.75);
    CHECK(m.at(0, 0) == 2.0);
    CHECK(m.at(2, 1) == 1.5);
    CHECK(m.at(0, 2) == 0.0);
    CHECK(m.nnz() == 8);  // 5 unique entries, 3 mirrored

    const Eigen::MatrixXd dense = test::to_dense(m);
    CHECK((dense - dense.transpose()).norm() == 0.0);
}

TEST_CASE("from_upper_triplets rejects bad input") {
    CHECK_THROWS_AS(SparseSymMatrix::from_upper_triplets(2, {{1, 0, 1.0}}), MattingError);
    CHECK_THROWS_AS(SparseSymMatrix::from_upper_triplets(2, {{0, 2, 1.0}}), MattingError);
}

TEST_CASE("symmetric matvec equals dense product") {
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    const int n = 24;
    std::vector<Triplet> triplets;
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j)
            if (j == i || (i + j) % 3 == 0) triplets.push_back({i, j, uni(rng)});
    const SparseSymMatrix m = SparseSymMatrix::from_upper_triplets(n, triplets);

    std::vector<double> x(static_cast<std::size_t>(n));
    for (double& v : x) v = uni(rng);
    const std::vector<double> y = m.matvec(x);

    const Eigen::MatrixXd dense = test::to_dense(m);
    Eigen::VectorXd xe(n);
    for (int i = 0; i < n; ++i) xe(i) = x[static_cast<std::size_t>(i)];
    const Eigen::VectorXd ye = dense * xe;
    for (int i = 0; i < n; ++i)
        CHECK(y[static_cast<std::size_t>(i)] == doctest::Approx(ye(i)).epsilon(1e-13));

    // Row sums via matvec with ones match the dense row sums.
    const std::vector<double> sums = m.row_sums();
    for (int i = 0; i < n; ++i)
        CHECK(sums[static_cast<std::size_t>(i)] ==
              doctest::Approx(dense.row(i).sum()).epsilon(1e-13));
}

TEST_CASE("upper_triplets round-trips the matrix") {
    std::vector<Triplet> triplets = {{0, 0, 1.0}, {0, 2, -2.0}, {1, 1, 0.5}, {2, 2, 3.0}};
    const SparseSymMatrix m = SparseSymMatrix::from_upper_triplets(3, triplets);
    const SparseSymMatrix again = SparseSymMatrix::from_upper_triplets(3, m.upper_triplets());
    CHECK(test::to_dense(m) == test::to_dense(again));
}
