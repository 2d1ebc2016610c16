#include "nwm/kernels.hpp"

#include "nwm/errors.hpp"
#include "nwm/kernels_table.hpp"

namespace nwm::kernels {

namespace {

// Reference backend. Plain loops, one accumulator, no reassociation tricks:
// this is the semantics the SIMD variants are tested against.
double scalar_dot(const double* a, const double* b, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += a[i] * b[i];
    return acc;
}

void scalar_axpy(double a, const double* x, double* y, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

void scalar_xpby(const double* x, double b, double* y, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] = x[i] + b * y[i];
}

void scalar_hadamard(const double* a, const double* b, double* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) out[i] = a[i] * b[i];
}

double scalar_sum_sq_diff(const double* a, const double* b, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double d = a[i] - b[i];
        acc += d * d;
    }
    return acc;
}

void scalar_csr_matvec(int rows, const int* row_ptr, const std::int32_t* col_idx,
                       const double* values, const double* x, double* y) {
    for (int r = 0; r < rows; ++r) {
        double acc = 0.0;
        for (int k = row_ptr[r]; k < row_ptr[r + 1]; ++k)
            acc += values[k] * x[col_idx[k]];
        y[r] = acc;
    }
}

const KernelTable kScalarTable = {
    scalar_dot, scalar_axpy, scalar_xpby, scalar_hadamard,
    scalar_sum_sq_diff, scalar_csr_matvec,
};

struct Dispatch {
    const KernelTable* table;
    Backend backend;
};

Dispatch& dispatch() {
    static Dispatch d = [] {
        if (const KernelTable* avx2 = detail::avx2_table())
            return Dispatch{avx2, Backend::avx2};
        return Dispatch{&kScalarTable, Backend::scalar};
    }();
    return d;
}

}  // namespace

const char* name(Backend backend) {
    return backend == Backend::scalar ? "scalar" : "avx2";
}

bool available(Backend backend) {
    if (backend == Backend::scalar) return true;
    return detail::avx2_table() != nullptr;
}

Backend active() { return dispatch().backend; }

void set_backend(Backend backend) {
    if (!available(backend))
        fail(Errc::unsupported_backend,
             std::string(name(backend)) + " kernels are not available on this machine");
    dispatch().table = backend == Backend::scalar ? &kScalarTable : detail::avx2_table();
    dispatch().backend = backend;
}

double dot(const double* a, const double* b, std::size_t n) {
    return dispatch().table->dot(a, b, n);
}

void axpy(double a, const double* x, double* y, std::size_t n) {
    dispatch().table->axpy(a, x, y, n);
}

void xpby(const double* x, double b, double* y, std::size_t n) {
    dispatch().table->xpby(x, b, y, n);
}

void hadamard(const double* a, const double* b, double* out, std::size_t n) {
    dispatch().table->hadamard(a, b, out, n);
}

double sum_sq_diff(const double* a, const double* b, std::size_t n) {
    return dispatch().table->sum_sq_diff(a, b, n);
}

void csr_matvec(int rows, const int* row_ptr, const std::int32_t* col_idx,
                const double* values, const double* x, double* y) {
    dispatch().table->csr_matvec(rows, row_ptr, col_idx, values, x, y);
}

}  // namespace nwm::kernels
