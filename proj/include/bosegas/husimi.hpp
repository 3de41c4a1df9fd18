#pragma once

#include <complex>
#include <vector>

#include "bosegas/quadrature.hpp"
#include "bosegas/special_functions.hpp"

namespace bosegas {

// Radial eigenfunctions of one angular-momentum channel on a uniform grid.
// vectors holds u_n(r_i) for the interior nodes i = 1..M, column-major (M x k),
// normalized so that sum_i h u_n(r_i)^2 = 1.
struct RadialChannel {
    int ell = 0;
    std::vector<double> energies;
    std::vector<double> occupations;
    std::vector<double> vectors;
    std::size_t count() const { return energies.size(); }
};

namespace husimi {

// out[l] = e^{-|Re z|} i_l(z) for l = 0..lmax (modified spherical Bessel functions).
void scaled_bessel_i(std::complex<double> z, int lmax, std::complex<double>* out);

// out[l] = log P_l(tau) for tau >= 1.
void log_legendre(double tau, int lmax, double* out);

// Coherent state (pi hbar)^{-3/4} e^{-(x-q)^2/(2 hbar)} e^{i p.x/hbar}.
// values[c][n] = sum_m |<coherent(p,q), (u_n/r) Y_lm>|^2 for every stored mode.
void mode_overlaps(const std::vector<RadialChannel>& channels, const quad::RadialGrid& grid, double hbar,
                   const special::Vec3& p, const special::Vec3& q, std::vector<std::vector<double>>& values);

// sum over modes of occupation * overlap, skipping (channel 0, mode 0) when skip_ground is set.
double husimi_value(const std::vector<RadialChannel>& channels, const quad::RadialGrid& grid, double hbar,
                    const special::Vec3& p, const special::Vec3& q, bool skip_ground);

}  // namespace husimi
}  // namespace bosegas
