#pragma once

#include <cstddef>
#include <vector>

// Hot loops shared by the solvers. Each has a plain serial version kept as the
// reference for testing and an OpenMP version used by default.
namespace bosegas::kernels {

// y = K x for a dense row-major rows x cols matrix.
void matvec_serial(const double* K, const double* x, double* y, std::size_t rows, std::size_t cols);
void matvec_parallel(const double* K, const double* x, double* y, std::size_t rows, std::size_t cols);

// rho[i] += sum_k weight[k] * u[k*stride + i]^2 over k = 0..n_modes-1, i = 0..n-1.
void accumulate_density_serial(const double* u, const double* weight, std::size_t n_modes,
                               std::size_t n, std::size_t stride, double* rho);
void accumulate_density_parallel(const double* u, const double* weight, std::size_t n_modes,
                                 std::size_t n, std::size_t stride, double* rho);

// Parallel loop helper: calls fn(i) for i in [0, n). Iterations must be independent.
template <class Fn>
void parallel_for(long n, Fn&& fn, bool parallel = true) {
    if (!parallel) {
        for (long i = 0; i < n; ++i) fn(i);
        return;
    }
#pragma omp parallel for schedule(dynamic)
    for (long i = 0; i < n; ++i) fn(i);
}

}  // namespace bosegas::kernels
