#include "bosegas/kernels.hpp"

namespace bosegas::kernels {

void matvec_serial(const double* K, const double* x, double* y, std::size_t rows, std::size_t cols) {
    for (std::size_t i = 0; i < rows; ++i) {
        const double* row = K + i * cols;
        double s = 0.0;
        for (std::size_t j = 0; j < cols; ++j) s += row[j] * x[j];
        y[i] = s;
    }
}

void matvec_parallel(const double* K, const double* x, double* y, std::size_t rows, std::size_t cols) {
#pragma omp parallel for schedule(static)
    for (long i = 0; i < static_cast<long>(rows); ++i) {
        const double* row = K + i * cols;
        double s = 0.0;
#pragma omp simd reduction(+ : s)
        for (std::size_t j = 0; j < cols; ++j) s += row[j] * x[j];
        y[i] = s;
    }
}

void accumulate_density_serial(const double* u, const double* weight, std::size_t n_modes,
                               std::size_t n, std::size_t stride, double* rho) {
    for (std::size_t k = 0; k < n_modes; ++k) {
        const double* uk = u + k * stride;
        const double wk = weight[k];
        for (std::size_t i = 0; i < n; ++i) rho[i] += wk * uk[i] * uk[i];
    }
}

void accumulate_density_parallel(const double* u, const double* weight, std::size_t n_modes,
                                 std::size_t n, std::size_t stride, double* rho) {
    // split over grid points so that threads never write the same entry
#pragma omp parallel for schedule(static)
    for (long i = 0; i < static_cast<long>(n); ++i) {
        double s = 0.0;
        for (std::size_t k = 0; k < n_modes; ++k) {
            const double v = u[k * stride + i];
            s += weight[k] * v * v;
        }
        rho[i] += s;
    }
}

}  // namespace bosegas::kernels
