#pragma once

#include "bosegas/potentials.hpp"

namespace bosegas {

struct IdealState {
    double beta = 0, omega = 0;
    double g0 = 0;   // condensate fraction
    double mu0 = 0;  // chemical potential, <= 0
    RadialDensity rho0;
    double free_energy = 0;
};

// beta_0 = zeta(3)^{1/3} / omega
double beta_critical(double omega);

// mu_0 <= 0 from (beta omega)^{-3} Li_3(e^{beta mu}) = 1, zero in the condensed phase.
double ideal_mu0(double beta, double omega);

// beta^{-3/2} eta(beta (omega^2 r^2/4 - mu))
double ideal_thermal_density(double r, double beta, double omega, double mu);

// Radius with beta c omega^2 r^2 >= 40 for an effective trap c omega^2 r^2.
double trap_rmax(double beta, double omega, double c = 0.25);

IdealState ideal_state(double beta, double omega, int n_points = 512);
IdealState ideal_state(double beta, double omega, GridPtr grid);

double ideal_free_energy(double beta, double omega);

// Fourier transform (2pi)^{-3/2} \int rho_0(x) e^{-ipx} dx of the thermal density at
// chemical potential mu <= 0, summed as a series of Gaussians.
double rho0_fourier(double p, double beta, double omega, double mu = 0.0);

}  // namespace bosegas
