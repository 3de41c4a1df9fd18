#pragma once

#include <memory>
#include <vector>

#include "bosegas/potentials.hpp"

namespace bosegas {

struct SCOptions {
    int n_points = 512;
    double tol = 1e-9;        // L1 fixed-point residual
    int max_iter = 5000;
    double theta = 0.5;       // damping, halved whenever the residual grows
    double tie_tol = 1e-12;   // |1 - thermal mass at mu=0| below this counts as critical
    enum class Init { Ideal, Ball } init = Init::Ideal;
    double ball_radius = 0;   // Ball init radius; 0 picks a trap-size default
    bool parallel = true;
};

struct SCState {
    double beta = 0, omega = 0, lambda = 0;
    RadialDensity rho_thermal;   // no point mass
    double g = 0;                // condensate fraction
    double mu = 0;               // shifted chemical potential, <= 0
    std::vector<double> w_eff;   // omega^2 r^2/4 + lambda (v*rho)(r) - lambda (v*rho)(0) - mu
    double conv0 = 0;            // (v*rho)(0) including the condensate
    double free_energy = 0;
    double residual = 0;         // last L1 fixed-point residual
    double el_residual = 0;      // ||rho - beta^{-3/2} eta(beta W)||_1 with W rebuilt from rho
    int iterations = 0;

    RadialDensity total_density() const { return {rho_thermal.grid, rho_thermal.values, g}; }
};

// gamma(p, r) on a (p, r) tensor grid, row-major with r as the outer index.
struct PhaseSpacePair {
    GridPtr p_grid;
    GridPtr r_grid;
    std::vector<double> gamma;
    double g = 0;

    double& at(std::size_t ir, std::size_t jp) { return gamma[ir * p_grid->size() + jp]; }
    double at(std::size_t ir, std::size_t jp) const { return gamma[ir * p_grid->size() + jp]; }
    // (2pi)^{-3} \int gamma dp as a function of r
    std::vector<double> spatial_density() const;
    // (2pi)^{-3} \int gamma + g
    double mass() const;
};

// Momentum grid with beta p_max^2 = 45.
GridPtr default_p_grid(double beta, int n_points = 768);

SCState solve_selfconsistent(double beta, double omega, const Potential& v, double lambda,
                             const SCOptions& opts = {});

double free_energy_of_state(const SCState& state, const Potential& v);

// gamma^sc(p, r) = 1/(e^{beta(p^2 + W(r))} - 1) on the state's r-grid.
PhaseSpacePair reconstruct_pair(const SCState& state, GridPtr p_grid = nullptr);

double evaluate_functional(const PhaseSpacePair& pair, double beta, double omega, const Potential& v,
                           double lambda, double admissibility_tol = 1e-6);

// (2pi)^{-3} \int [f(m) - f(gamma) - f'(gamma)(m - gamma)] with gamma from the state.
double sc_relative_entropy_to_state(const PhaseSpacePair& pair, const SCState& state);

// One application of the self-consistency map without damping. Returns the new
// (rho, g, mu) and W built from the input density.
struct SCMapResult {
    std::vector<double> rho;
    double g = 0, mu = 0;
    std::vector<double> w_eff;
    double conv0 = 0;
};
SCMapResult sc_map(const RadialDensity& input, double beta, double omega, double lambda,
                   const ConvolutionOperator& op, double tie_tol = 1e-12, bool parallel = true);

}  // namespace bosegas
