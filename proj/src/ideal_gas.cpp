#include "bosegas/ideal_gas.hpp"

#include <cmath>
#include <numbers>

#include "bosegas/errors.hpp"
#include "bosegas/special_functions.hpp"

namespace bosegas {

using special::PolylogOrder;

double beta_critical(double omega) {
    if (!(omega > 0)) throw DomainError("beta_critical: omega must be positive");
    return std::cbrt(special::zeta(3.0)) / omega;
}

double ideal_mu0(double beta, double omega) {
    if (!(beta > 0 && omega > 0)) throw DomainError("ideal state: beta and omega must be positive");
    const double target = std::pow(beta * omega, 3);
    if (target >= special::zeta(3.0)) return 0.0;
    // Li_3(e^x) increases with x; bisection on x = beta mu in [-50, 0]
    double lo = -50.0, hi = 0.0;
    if (special::polylog_exp(PolylogOrder::Three, 50.0) > target)
        throw DomainError("ideal state: temperature too high for the beta*mu bracket [-50, 0]");
    while (hi - lo > 1e-13) {
        const double mid = 0.5 * (lo + hi);
        if (special::polylog_exp(PolylogOrder::Three, -mid) < target) lo = mid;
        else hi = mid;
    }
    return 0.5 * (lo + hi) / beta;
}

double ideal_thermal_density(double r, double beta, double omega, double mu) {
    const double t = beta * (0.25 * omega * omega * r * r - mu);
    return std::pow(beta, -1.5) * special::eta(std::max(t, 0.0));
}

double trap_rmax(double beta, double omega, double c) {
    if (!(c > 0)) throw DomainError("trap_rmax: curvature constant must be positive");
    return std::sqrt(40.0 / (beta * c * omega * omega));
}

IdealState ideal_state(double beta, double omega, GridPtr grid) {
    IdealState s;
    s.beta = beta;
    s.omega = omega;
    s.mu0 = ideal_mu0(beta, omega);
    s.g0 = s.mu0 < 0 ? 0.0 : std::max(0.0, 1.0 - special::zeta(3.0) / std::pow(beta * omega, 3));
    s.rho0.grid = grid;
    s.rho0.values.resize(grid->size());
    for (std::size_t i = 0; i < grid->size(); ++i)
        s.rho0.values[i] = ideal_thermal_density(grid->r[i], beta, omega, s.mu0);
    s.free_energy = ideal_free_energy(beta, omega);
    return s;
}

IdealState ideal_state(double beta, double omega, int n_points) {
    if (!(beta > 0 && omega > 0)) throw DomainError("ideal state: beta and omega must be positive");
    return ideal_state(beta, omega, quad::make_radial_grid(trap_rmax(beta, omega), n_points));
}

double ideal_free_energy(double beta, double omega) {
    const double mu = ideal_mu0(beta, omega);
    const double bw3 = std::pow(beta * omega, 3);
    if (mu == 0.0) return -special::zeta(4.0) / (beta * bw3);
    return -special::polylog_exp(PolylogOrder::Four, -beta * mu) / (beta * bw3) + mu;
}

double rho0_fourier(double p, double beta, double omega, double mu) {
    if (mu > 0) throw DomainError("rho0_fourier: mu must be <= 0");
    const double c = p * p / (beta * omega * omega);
    const double x = beta * mu;
    // at mu = 0 the terms decay like k^{-3}: sum a fixed head and integrate the tail
    const long kHead = 2000, kMax = 10000000;
    double sum = 0.0;
    long k = 1;
    for (; k <= kMax; ++k) {
        const double a = double(k);
        const double term = std::exp(a * x - c / a) / (a * a * a);
        sum += term;
        if (x == 0.0 ? k == kHead : (k >= kHead && term < 1e-18 * sum)) break;
    }
    // remaining terms by the midpoint rule: \int_{K+1/2}^\infty a^{-3} e^{-c/a} da
    const double U = 1.0 / (k + 0.5);
    const double y = c * U;
    double tail;
    if (y < 1e-3) tail = U * U * (0.5 - y / 3.0 + y * y / 8.0);
    else tail = -(std::expm1(-y) + y * std::exp(-y)) / (c * c);
    sum += tail * std::exp((k + 0.5) * x);
    return std::pow(2.0 * std::numbers::pi, -1.5) * sum / std::pow(beta * omega, 3);
}

}  // namespace bosegas
