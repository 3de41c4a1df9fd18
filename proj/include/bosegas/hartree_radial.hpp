#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bosegas/husimi.hpp"
#include "bosegas/potentials.hpp"
#include "bosegas/sc_solver.hpp"

namespace bosegas {

struct HartreeOptions {
    int grid_points = 2048;        // interior points of the uniform radial grid
    double tol = 1e-9;             // ||rho_out - rho_in||_1 / N
    int max_iter = 200;
    double theta = 1.0;            // damping, halved whenever the residual grows
    double cutoff_weight = 1e-8;   // Bose weight at the spectral cutoff
    double tail_tol = 1e-6;        // allowed occupation beyond the cutoff, relative to N
    bool keep_vectors = true;
    bool parallel = true;
    std::optional<RadialDensity> init;  // initial rho (mass N) on the solver grid
};

struct HartreeState {
    double N = 0, hbar = 0, beta = 0, omega = 0, lambda = 0;
    Potential potential;
    GridPtr grid;                          // uniform, nodes 0..M+1
    std::vector<RadialChannel> channels;   // l = 0..l_max
    double mu = 0;
    double e0 = 0;                         // lowest eigenvalue
    double e_cut = 0;
    RadialDensity rho;                     // mass N
    double N0 = 0;                         // ground-mode occupation
    double gap = 0;
    double free_energy = 0;
    double residual = 0;
    double tail_occupation = 0;            // estimated occupation above e_cut
    int iterations = 0;

    std::size_t mode_count() const;
};

// Grid radius: omega^2 R^2/4 >= 40/beta and >= 40 hbar omega.
double hartree_radius(double N, double beta, double omega);

HartreeState solve_hartree(double N, double beta, double omega, const Potential& v, double lambda,
                           const HartreeOptions& opts = {});

double condensate_fraction(const HartreeState& s);
double spectral_gap(const HartreeState& s);

// tr[Q zeta(beta(H - mu))] with zeta(t) = (1 + e^t)/(e^t - 1)^2 over all modes but the ground mode,
// and the same quantity multiplied by (beta hbar omega)^3.
struct ExcitedTrace {
    double trace = 0;
    double scaled = 0;
};
ExcitedTrace excited_trace(const HartreeState& s);

// beta^{-1} sum (2l+1) ln(1 - e^{-beta(e - mu)}) + mu N - lambda D(eta, eta)/N for the operator
// h + lambda v*eta/N, with mu fixed by the particle number.
double dual_objective(const RadialDensity& eta, const HartreeState& s);

enum class RayKind { Parallel, Perpendicular };

// Rays with |p| = s cos(phi), |q| = (2/omega) s sin(phi), so that p^2 + omega^2 q^2/4 = s^2.
struct HusimiSample {
    RayKind ray = RayKind::Parallel;
    double s = 0;
    special::Vec3 p{}, q{};
    double value = 0;
};

struct HusimiSlice {
    std::vector<HusimiSample> samples;
    std::vector<double> weights;   // quadrature weights in s, per sample
    std::string window = "gaussian pi^{-3/4} exp(-x^2/2)";
    double phi = 0;
};

struct HusimiRays {
    bool parallel = true;
    bool perpendicular = true;
    double phi = 1.0471975511965976;  // pi/3
    double s_max = 0;                 // 0 picks sqrt(25/beta)
};

// Husimi function of Q gamma Q (ground mode removed) sampled on Gauss-Legendre nodes in s.
HusimiSlice husimi_slice(const HartreeState& s, const HusimiRays& rays = {}, int n_samples = 48);

struct DistanceReport {
    double condensate_error = 0;       // |N0/N - g|
    double husimi_parallel = 0;        // int |m - gamma| s^5 ds / int gamma s^5 ds along each ray
    double husimi_perpendicular = 0;
    double husimi_discrepancy = 0;     // mean over the sampled rays
    HusimiSlice slice;
    std::vector<double> gamma_sc;      // semiclassical values at the slice samples
};

DistanceReport compare_to_semiclassical(const HartreeState& h, const SCState& sc, int n_samples = 48);

}  // namespace bosegas
