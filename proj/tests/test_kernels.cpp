#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "nwm/errors.hpp"
#include "nwm/kernels.hpp"
#include "support/oracles.hpp"

using namespace nwm;

namespace {

// Restores the previously active backend when the scope ends.
struct BackendGuard {
    kernels::Backend saved = kernels::active();
    ~BackendGuard() { kernels::set_backend(saved); }
};

std::vector<double> random_vec(std::size_t n, std::mt19937& rng) {
    std::uniform_real_distribution<double> uni(-2.0, 2.0);
    std::vector<double> v(n);
    for (double& x : v) x = uni(rng);
    return v;
}

// Sizes chosen to hit empty input, vector tails of every length and a span
// long enough to cover the unrolled paths.
const std::size_t kSizes[] = {0, 1, 2, 3, 4, 5, 7, 8, 9, 15, 31, 32, 33, 100, 1023};

}  // namespace

TEST_CASE("backend selection") {
    CHECK(kernels::available(kernels::Backend::scalar));
    BackendGuard guard;
    kernels::set_backend(kernels::Backend::scalar);
    CHECK(kernels::active() == kernels::Backend::scalar);
    if (kernels::available(kernels::Backend::avx2)) {
        kernels::set_backend(kernels::Backend::avx2);
        CHECK(kernels::active() == kernels::Backend::avx2);
    } else {
        CHECK_THROWS_AS(kernels::set_backend(kernels::Backend::avx2), MattingError);
    }
}

TEST_CASE("scalar and avx2 backends agree") {
    if (!kernels::available(kernels::Backend::avx2)) {
        MESSAGE("avx2 not available on this machine; equivalence run skipped");
        return;
    }
    BackendGuard guard;
    std::mt19937 rng(7);

    for (std::size_t n : kSizes) {
        const std::vector<double> a = random_vec(n, rng);
        const std::vector<double> b = random_vec(n, rng);
        std::vector<double> y0 = random_vec(n, rng);
        std::vector<double> y1 = y0;
        std::vector<double> out0(n), out1(n);
        const double scale = 0.37;

        kernels::set_backend(kernels::Backend::scalar);
        const double dot0 = kernels::dot(a.data(), b.data(), n);
        const double ssd0 = kernels::sum_sq_diff(a.data(), b.data(), n);
        kernels::axpy(scale, a.data(), y0.data(), n);
        kernels::hadamard(a.data(), b.data(), out0.data(), n);
        std::vector<double> p0 = b;
        kernels::xpby(a.data(), scale, p0.data(), n);

        kernels::set_backend(kernels::Backend::avx2);
        const double dot1 = kernels::dot(a.data(), b.data(), n);
        const double ssd1 = kernels::sum_sq_diff(a.data(), b.data(), n);
        kernels::axpy(scale, a.data(), y1.data(), n);
        kernels::hadamard(a.data(), b.data(), out1.data(), n);
        std::vector<double> p1 = b;
        kernels::xpby(a.data(), scale, p1.data(), n);

        // Reductions may reassociate; elementwise ops may fuse multiply-add.
        const double red_tol = 1e-12 * (static_cast<double>(n) + 1.0);
        CHECK(std::abs(dot0 - dot1) <= red_tol * (1.0 + std::abs(dot0)));
        CHECK(std::abs(ssd0 - ssd1) <= red_tol * (1.0 + std::abs(ssd0)));
        for (std::size_t i = 0; i < n; ++i) {
            CHECK(std::abs(y0[i] - y1[i]) <= 1e-14 * (1.0 + std::abs(y0[i])));
            CHECK(out0[i] == out1[i]);
            CHECK(std::abs(p0[i] - p1[i]) <= 1e-14 * (1.0 + std::abs(p0[i])));
        }
    }
}

TEST_CASE("csr_matvec equals the dense product on both backends") {
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    std::uniform_int_distribution<int> nnz_per_row(0, 6);

    const int rows = 37, cols = 41;
    CsrMatrix m;
    m.rows = rows;
    m.cols = cols;
    m.row_ptr.push_back(0);
    for (int r = 0; r < rows; ++r) {
        std::vector<int> picked;
        const int k = nnz_per_row(rng);
        std::uniform_int_distribution<int> col(0, cols - 1);
        for (int t = 0; t < k; ++t) picked.push_back(col(rng));
        std::sort(picked.begin(), picked.end());
        picked.erase(std::unique(picked.begin(), picked.end()), picked.end());
        for (int c : picked) {
            m.col_idx.push_back(c);
            m.values.push_back(uni(rng));
        }
        m.row_ptr.push_back(static_cast<int>(m.col_idx.size()));
    }
    const std::vector<double> x = random_vec(static_cast<std::size_t>(cols), rng);

    const Eigen::MatrixXd dense = test::to_dense(m);
    Eigen::VectorXd xe(cols);
    for (int i = 0; i < cols; ++i) xe(i) = x[static_cast<std::size_t>(i)];
    const Eigen::VectorXd ye = dense * xe;

    BackendGuard guard;
    for (kernels::Backend backend : {kernels::Backend::scalar, kernels::Backend::avx2}) {
        if (!kernels::available(backend)) continue;
        kernels::set_backend(backend);
        std::vector<double> y(static_cast<std::size_t>(rows));
        m.matvec(x.data(), y.data());
        for (int r = 0; r < rows; ++r)
            CHECK(y[static_cast<std::size_t>(r)] == doctest::Approx(ye(r)).epsilon(1e-12));
    }
}
