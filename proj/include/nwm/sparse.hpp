#pragma once

#include <cstdint>
#include <vector>

namespace nwm {

struct Triplet {
    int row = 0;
    int col = 0;
    double value = 0.0;
};

// Plain CSR matrix. Column indices within a row are strictly ascending.
struct CsrMatrix {
    int rows = 0;
    int cols = 0;
    std::vector<int> row_ptr;           // rows + 1 entries
    std::vector<std::int32_t> col_idx;  // nnz entries
    std::vector<double> values;         // nnz entries

    int nnz() const { return row_ptr.empty() ? 0 : row_ptr.back(); }

    // y = A x; x has `cols` entries, y has `rows` entries.
    void matvec(const double* x, double* y) const;
    std::vector<double> matvec(const std::vector<double>& x) const;

    // Stored value at (r, c), 0 when the slot is not stored.
    double at(int r, int c) const;
};

// N x N symmetric sparse matrix. Both triangles are stored so the product
// is a plain CSR matvec; symmetry is exact by construction because the
// lower triangle is mirrored from the upper one entry by entry.
class SparseSymMatrix {
public:
    SparseSymMatrix() = default;

    // Builds from upper-triangle entries (row <= col required). Duplicate
    // coordinates are summed in their sorted order, which makes assembly
    // independent of the triplet input order up to that canonical summation.
    static SparseSymMatrix from_upper_triplets(int n, std::vector<Triplet> triplets);

    int n() const { return csr_.rows; }
    int nnz() const { return csr_.nnz(); }
    bool empty() const { return csr_.rows == 0; }

    const CsrMatrix& csr() const { return csr_; }

    double at(int i, int j) const { return csr_.at(i, j); }

    void matvec(const double* x, double* y) const { csr_.matvec(x, y); }
    std::vector<double> matvec(const std::vector<double>& x) const { return csr_.matvec(x); }

    std::vector<double> diagonal() const;
    std::vector<double> row_sums() const;

    // Upper-triangle entries (row <= col), sorted by (row, col).
    std::vector<Triplet> upper_triplets() const;

private:
    CsrMatrix csr_;
};

}  // namespace nwm
