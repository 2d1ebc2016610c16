#pragma once

#include <cstddef>
#include <cstdint>

// Dense/sparse arithmetic inner loops used by the solver and the evaluation
// metrics. Each operation has a scalar reference implementation and an AVX2
// variant; the active backend is selected at runtime (AVX2 when the CPU
// supports it, scalar otherwise) and can be forced via set_backend(). The
// two backends are equivalence-tested against each other.

namespace nwm::kernels {

enum class Backend { scalar, avx2 };

const char* name(Backend backend);

// True when the backend can run on this build/CPU. scalar is always available.
bool available(Backend backend);

Backend active();

// Forces a backend; throws MattingError(unsupported_backend) when it is not
// available. Not thread-safe; call before starting work.
void set_backend(Backend backend);

// dot = sum_i a[i] * b[i]
double dot(const double* a, const double* b, std::size_t n);

// y += a * x
void axpy(double a, const double* x, double* y, std::size_t n);

// y = x + b * y   (conjugate-direction update)
void xpby(const double* x, double b, double* y, std::size_t n);

// out = a * b (elementwise)
void hadamard(const double* a, const double* b, double* out, std::size_t n);

// sum_i (a[i] - b[i])^2
double sum_sq_diff(const double* a, const double* b, std::size_t n);

// y = A x for a CSR matrix with `rows` rows. row_ptr has rows + 1 entries;
// col_idx/values have row_ptr[rows] entries.
void csr_matvec(int rows, const int* row_ptr, const std::int32_t* col_idx,
                const double* values, const double* x, double* y);

}  // namespace nwm::kernels
