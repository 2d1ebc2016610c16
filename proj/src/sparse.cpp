#include "nwm/sparse.hpp"

#include <algorithm>

#include "nwm/errors.hpp"
#include "nwm/kernels.hpp"

namespace nwm {

void CsrMatrix::matvec(const double* x, double* y) const {
    kernels::csr_matvec(rows, row_ptr.data(), col_idx.data(), values.data(), x, y);
}

std::vector<double> CsrMatrix::matvec(const std::vector<double>& x) const {
    if (static_cast<int>(x.size()) != cols)
        fail(Errc::dimension_mismatch, "matvec input length != matrix columns");
    std::vector<double> y(static_cast<std::size_t>(rows));
    matvec(x.data(), y.data());
    return y;
}

double CsrMatrix::at(int r, int c) const {
    const auto begin = col_idx.begin() + row_ptr[r];
    const auto end = col_idx.begin() + row_ptr[r + 1];
    const auto it = std::lower_bound(begin, end, c);
    if (it == end || *it != c) return 0.0;
    return values[static_cast<std::size_t>(it - col_idx.begin())];
}

SparseSymMatrix SparseSymMatrix::from_upper_triplets(int n, std::vector<Triplet> triplets) {
    if (n < 0) fail(Errc::invalid_argument, "negative matrix dimension");
    for (const Triplet& t : triplets) {
        if (t.row < 0 || t.col < 0 || t.row >= n || t.col >= n)
            fail(Errc::invalid_argument, "triplet index out of range");
        if (t.row > t.col)
            fail(Errc::invalid_argument, "upper-triangle triplet has row > col");
    }

    auto by_coord = [](const Triplet& a, const Triplet& b) {
        return a.row != b.row ? a.row < b.row : a.col < b.col;
    };
    if (!std::is_sorted(triplets.begin(), triplets.end(), by_coord))
        std::stable_sort(triplets.begin(), triplets.end(), by_coord);

    // Coalesce duplicates in sorted order.
    std::vector<Triplet> upper;
    upper.reserve(triplets.size());
    for (const Triplet& t : triplets) {
        if (!upper.empty() && upper.back().row == t.row && upper.back().col == t.col)
            upper.back().value += t.value;
        else
            upper.push_back(t);
    }

    // Count entries per row including the mirrored lower triangle.
    std::vector<int> counts(static_cast<std::size_t>(n) + 1, 0);
    for (const Triplet& t : upper) {
        ++counts[static_cast<std::size_t>(t.row) + 1];
        if (t.row != t.col) ++counts[static_cast<std::size_t>(t.col) + 1];
    }

    SparseSymMatrix m;
    m.csr_.rows = n;
    m.csr_.cols = n;
    m.csr_.row_ptr.resize(static_cast<std::size_t>(n) + 1, 0);
    for (int i = 0; i < n; ++i)
        m.csr_.row_ptr[static_cast<std::size_t>(i) + 1] =
            m.csr_.row_ptr[static_cast<std::size_t>(i)] + counts[static_cast<std::size_t>(i) + 1];

    const int total = m.csr_.row_ptr.back();
    m.csr_.col_idx.resize(static_cast<std::size_t>(total));
    m.csr_.values.resize(static_cast<std::size_t>(total));

    std::vector<int> cursor(m.csr_.row_ptr.begin(), m.csr_.row_ptr.end() - 1);
    // Upper entries arrive sorted by (row, col); mirrored entries land at
    // (col, row) where rows are visited in ascending `row` order, so each
    // row's column list ends up ascending without a final sort.
    for (const Triplet& t : upper) {
        if (t.row != t.col) {
            const int slot = cursor[static_cast<std::size_t>(t.col)]++;
            m.csr_.col_idx[static_cast<std::size_t>(slot)] = t.row;
            m.csr_.values[static_cast<std::size_t>(slot)] = t.value;
        }
    }
    for (const Triplet& t : upper) {
        const int slot = cursor[static_cast<std::size_t>(t.row)]++;
        m.csr_.col_idx[static_cast<std::size_t>(slot)] = t.col;
        m.csr_.values[static_cast<std::size_t>(slot)] = t.value;
    }
    return m;
}

std::vector<double> SparseSymMatrix::diagonal() const {
    std::vector<double> d(static_cast<std::size_t>(n()), 0.0);
    for (int i = 0; i < n(); ++i) d[static_cast<std::size_t>(i)] = csr_.at(i, i);
    return d;
}

std::vector<double> SparseSymMatrix::row_sums() const {
    const std::vector<double> ones(static_cast<std::size_t>(n()), 1.0);
    return csr_.matvec(ones);
}

std::vector<Triplet> SparseSymMatrix::upper_triplets() const {
    std::vector<Triplet> out;
    out.reserve(csr_.col_idx.size() / 2 + static_cast<std::size_t>(n()));
    for (int r = 0; r < n(); ++r)
        for (int k = csr_.row_ptr[r]; k < csr_.row_ptr[r + 1]; ++k)
            if (csr_.col_idx[static_cast<std::size_t>(k)] >= r)
                out.push_back({r, csr_.col_idx[static_cast<std::size_t>(k)],
                               csr_.values[static_cast<std::size_t>(k)]});
    return out;
}

}  // namespace nwm
