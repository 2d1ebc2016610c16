#include "nwm/smoothterm.hpp"

#include <algorithm>
#include <array>
#include <cstdint>

#include "nwm/errors.hpp"

namespace nwm {

namespace {

// Inverse of a symmetric positive definite 3x3 matrix by cofactors. The
// result is exactly symmetric because shared cofactors are computed once.
struct Sym3 {
    // [ a00 a01 a02 ]
    // [ a01 a11 a12 ]
    // [ a02 a12 a22 ]
    double a00, a01, a02, a11, a12, a22;

    Sym3 inverse() const {
        const double c00 = a11 * a22 - a12 * a12;
        const double c01 = a02 * a12 - a01 * a22;
        const double c02 = a01 * a12 - a02 * a11;
        const double c11 = a00 * a22 - a02 * a02;
        const double c12 = a01 * a02 - a00 * a12;
        const double c22 = a00 * a11 - a01 * a01;
        const double det = a00 * c00 + a01 * c01 + a02 * c02;
        const double inv_det = 1.0 / det;
        return {c00 * inv_det, c01 * inv_det, c02 * inv_det,
                c11 * inv_det, c12 * inv_det, c22 * inv_det};
    }

    Rgb apply(const Rgb& v) const {
        return {a00 * v.r + a01 * v.g + a02 * v.b,
                a01 * v.r + a11 * v.g + a12 * v.b,
                a02 * v.r + a12 * v.g + a22 * v.b};
    }
};

// Upper-triangle CSR skeleton for the 5x5 co-window neighborhood. For
// images at least 3x3, every pixel pair within Chebyshev distance 2 shares
// at least one full 3x3 window, so this pattern is the exact support.
struct UpperPattern {
    std::vector<int> row_ptr;
    std::vector<std::int32_t> cols;
    std::vector<double> values;

    int slot(int row, int col) const {
        const auto begin = cols.begin() + row_ptr[static_cast<std::size_t>(row)];
        const auto end = cols.begin() + row_ptr[static_cast<std::size_t>(row) + 1];
        const auto it = std::lower_bound(begin, end, col);
        return static_cast<int>(it - cols.begin());
    }

    void add(int row, int col, double value) {
        values[static_cast<std::size_t>(slot(row, col))] += value;
    }
};

UpperPattern build_pattern(int width, int height) {
    UpperPattern pattern;
    const int n = width * height;
    pattern.row_ptr.assign(static_cast<std::size_t>(n) + 1, 0);

    auto emit_row = [&](int x, int y, auto&& sink) {
        for (int dy = 0; dy <= 2; ++dy) {
            const int ny = y + dy;
            if (ny >= height) break;
            const int dx0 = dy == 0 ? 0 : -2;
            for (int dx = dx0; dx <= 2; ++dx) {
                const int nx = x + dx;
                if (nx < 0 || nx >= width) continue;
                sink(pixel_index(nx, ny, width));
            }
        }
    };

    for (int y = 0; y < height; ++y)
        for (int x = 0; x < width; ++x) {
            int count = 0;
            emit_row(x, y, [&](int) { ++count; });
            pattern.row_ptr[static_cast<std::size_t>(pixel_index(x, y, width)) + 1] = count;
        }
    for (int i = 0; i < n; ++i)
        pattern.row_ptr[static_cast<std::size_t>(i) + 1] += pattern.row_ptr[static_cast<std::size_t>(i)];

    pattern.cols.resize(static_cast<std::size_t>(pattern.row_ptr.back()));
    pattern.values.assign(static_cast<std::size_t>(pattern.row_ptr.back()), 0.0);
    for (int y = 0; y < height; ++y)
        for (int x = 0; x < width; ++x) {
            int k = pattern.row_ptr[static_cast<std::size_t>(pixel_index(x, y, width))];
            emit_row(x, y, [&](int col) { pattern.cols[static_cast<std::size_t>(k++)] = col; });
        }
    return pattern;
}

}  // namespace

SparseSymMatrix matting_laplacian(const Image& image, double eps) {
    if (!(eps > 0.0)) fail(Errc::invalid_argument, "eps must be > 0");
    if (image.width < 3 || image.height < 3)
        fail(Errc::image_too_small, "matting Laplacian needs an image of at least 3x3");

    const int width = image.width;
    const int height = image.height;
    UpperPattern pattern = build_pattern(width, height);

    constexpr int kWin = 9;
    const double inv_win = 1.0 / kWin;
    std::array<int, kWin> px;
    std::array<Rgb, kWin> delta;   // I_t - mu
    std::array<Rgb, kWin> smooth;  // (Sigma + eps/9 I)^-1 (I_t - mu)

    // Window centers are interior pixels; accumulation order is the fixed
    // row-major sweep, so assembly is deterministic.
    for (int cy = 1; cy + 1 < height; ++cy) {
        for (int cx = 1; cx + 1 < width; ++cx) {
            int t = 0;
            Rgb mean{};
            for (int wy = -1; wy <= 1; ++wy)
                for (int wx = -1; wx <= 1; ++wx, ++t) {
                    px[static_cast<std::size_t>(t)] = pixel_index(cx + wx, cy + wy, width);
                    const Rgb c = image.rgb(px[static_cast<std::size_t>(t)]);
                    delta[static_cast<std::size_t>(t)] = c;
                    mean = mean + c;
                }
            mean = inv_win * mean;

            Sym3 cov{0, 0, 0, 0, 0, 0};
            for (t = 0; t < kWin; ++t) {
                const Rgb d = delta[static_cast<std::size_t>(t)] - mean;
                delta[static_cast<std::size_t>(t)] = d;
                cov.a00 += d.r * d.r;
                cov.a01 += d.r * d.g;
                cov.a02 += d.r * d.b;
                cov.a11 += d.g * d.g;
                cov.a12 += d.g * d.b;
                cov.a22 += d.b * d.b;
            }
            cov.a00 = cov.a00 * inv_win + eps * inv_win;
            cov.a01 *= inv_win;
            cov.a02 *= inv_win;
            cov.a11 = cov.a11 * inv_win + eps * inv_win;
            cov.a12 *= inv_win;
            cov.a22 = cov.a22 * inv_win + eps * inv_win;

            const Sym3 inv = cov.inverse();
            for (t = 0; t < kWin; ++t)
                smooth[static_cast<std::size_t>(t)] = inv.apply(delta[static_cast<std::size_t>(t)]);

            // Window pixels are ordered by ascending pixel index, so a <= b
            // here is exactly the upper triangle.
            for (int a = 0; a < kWin; ++a)
                for (int b = a; b < kWin; ++b) {
                    const double affinity =
                        (1.0 + dot(delta[static_cast<std::size_t>(a)],
                                   smooth[static_cast<std::size_t>(b)])) * inv_win;
                    const double value = (a == b ? 1.0 : 0.0) - affinity;
                    pattern.add(px[static_cast<std::size_t>(a)], px[static_cast<std::size_t>(b)], value);
                }
        }
    }

    std::vector<Triplet> triplets;
    triplets.reserve(pattern.values.size());
    const int n = width * height;
    for (int row = 0; row < n; ++row)
        for (int k = pattern.row_ptr[static_cast<std::size_t>(row)];
             k < pattern.row_ptr[static_cast<std::size_t>(row) + 1]; ++k)
            triplets.push_back({row, pattern.cols[static_cast<std::size_t>(k)],
                                pattern.values[static_cast<std::size_t>(k)]});
    return SparseSymMatrix::from_upper_triplets(n, std::move(triplets));
}

}  // namespace nwm
