#pragma once

#include <optional>
#include <random>
#include <utility>
#include <vector>

#include "bosegas/potentials.hpp"

namespace bosegas {

struct TcOptions {
    int n_points = 512;
    double tol = 1e-10;        // L1 fixed-point residual
    int max_iter = 2000;
    double beta_rel_tol = 1e-12;
    int divergence_window = 5; // consecutive residual increases before giving up
    std::optional<RadialDensity> init;  // defaults to the ideal critical density
    bool parallel = true;
};

struct TcResult {
    double lambda = 0;
    double beta_c = 0;
    RadialDensity rho_c;
    int iterations = 0;
    double residual = 0;
    std::pair<double, double> bracket;
};

// (1 + c lambda)^{-1/2} beta_0 <= beta_c <= (1 - c lambda)^{-1/2} beta_0 with c = 2 hessian_sup / omega^2.
std::pair<double, double> tc_bracket(double lambda, double omega, const Potential& v);

// Grid used by find_tc: wide enough for the coldest admissible beta.
GridPtr tc_grid(double lambda, double omega, const Potential& v, int n_points = 512);

struct TStep {
    RadialDensity rho;
    double beta = 0;
};

// One application of T: build W from rho, pick beta so that the thermal mass is 1.
TStep apply_T(const RadialDensity& rho, double lambda, double omega, const ConvolutionOperator& op,
              const TcOptions& opts = {});
TStep apply_T(const RadialDensity& rho, double lambda, double omega, const Potential& v,
              const TcOptions& opts = {});

TcResult find_tc(double lambda, double omega, const Potential& v, const TcOptions& opts = {});

// ||T rho1 - T rho2||_1 / ||rho1 - rho2||_1
double t_lipschitz_ratio(const RadialDensity& rho1, const RadialDensity& rho2, double lambda, double omega,
                         const ConvolutionOperator& op);

// Random unit-mass profile: positive mixture of Gaussians with random widths.
RadialDensity random_unit_density(const GridPtr& grid, std::mt19937_64& rng, double width_scale = 1.0);

// v*rho_0(0) - v*rho_0(r) for the ideal critical density on `grid`, with the
// small-r values taken from the r^2 Taylor term.
std::vector<double> xi_potential_gap(double omega, const Potential& v, const GridPtr& grid);

// Mean-field shift coefficient from the radial reduction of the (p, x) integral.
double xi_coefficient(double omega, const Potential& v, int n_points = 1024);

struct SlopeReport {
    std::vector<double> lambdas;
    std::vector<double> beta_c;
    std::vector<double> slopes;     // (beta_c/beta_0 - 1)/lambda
    double extrapolated = 0;        // polynomial extrapolation of the slopes to lambda = 0
    double xi = 0;
    double relative_deviation = 0;  // |extrapolated - xi| / xi
    double beta0 = 0;
};

SlopeReport tc_slope_check(double omega, const Potential& v, const std::vector<double>& lambdas,
                           const TcOptions& opts = {});

}  // namespace bosegas
