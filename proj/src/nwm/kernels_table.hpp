#pragma once

#include <cstddef>
#include <cstdint>

// Internal: function-pointer table shared between the kernel dispatcher and
// the per-ISA implementation files.

namespace nwm::kernels {

struct KernelTable {
    double (*dot)(const double*, const double*, std::size_t);
    void (*axpy)(double, const double*, double*, std::size_t);
    void (*xpby)(const double*, double, double*, std::size_t);
    void (*hadamard)(const double*, const double*, double*, std::size_t);
    double (*sum_sq_diff)(const double*, const double*, std::size_t);
    void (*csr_matvec)(int, const int*, const std::int32_t*, const double*,
                       const double*, double*);
};

namespace detail {

// Returns the AVX2 table, or nullptr when this build or this CPU cannot run
// AVX2+FMA code.
const KernelTable* avx2_table();

}  // namespace detail

}  // namespace nwm::kernels
