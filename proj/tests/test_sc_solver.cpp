#include "doctest.h"

#include <cmath>

#include "bosegas/errors.hpp"
#include "bosegas/ideal_gas.hpp"
#include "bosegas/sc_solver.hpp"
#include "bosegas/special_functions.hpp"

using namespace bosegas;

namespace {
double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }
}  // namespace

TEST_CASE("lambda = 0 reproduces the ideal gas") {
    const Potential v = make_gaussian_potential(1.0, 1.0);
    const double b0 = beta_critical(1.0);
    for (double ratio : {0.8, 1.3, 2.0}) {
        const double beta = ratio * b0;
        const SCState s = solve_selfconsistent(beta, 1.0, v, 0.0);
        const IdealState id = ideal_state(beta, 1.0);
        CHECK(s.g == doctest::Approx(id.g0).epsilon(1e-10));
        CHECK(s.mu == doctest::Approx(id.mu0).epsilon(1e-10));
        CHECK(rel(s.free_energy, id.free_energy) < 1e-8);
        CHECK(s.g * s.mu == 0.0);
    }
}

TEST_CASE("interacting state: complementarity, mass, Euler-Lagrange") {
    const Potential v = make_gaussian_potential(1.0, 1.0);
    const double omega = 2.0, b0 = beta_critical(omega);
    for (double ratio : {0.9, 1.5}) {
        const SCState s = solve_selfconsistent(ratio * b0, omega, v, 0.05);
        CHECK(s.g >= 0.0);
        CHECK(s.mu <= 0.0);
        CHECK(s.g * s.mu == 0.0);
        CHECK(s.total_density().mass() == doctest::Approx(1.0).epsilon(1e-8));
        CHECK(s.residual < 1e-9);
        CHECK(s.el_residual < 1e-7);
        if (ratio > 1) CHECK(s.g > 0.0);
        else CHECK(s.mu < 0.0);
    }
}

TEST_CASE("two routes to the free energy agree") {
    const Potential v = make_gaussian_potential(1.0, 1.0);
    const double omega = 2.0, b0 = beta_critical(omega);
    for (double ratio : {0.95, 1.4}) {
        const SCState s = solve_selfconsistent(ratio * b0, omega, v, 0.05);
        const PhaseSpacePair pr = reconstruct_pair(s);
        CHECK(pr.mass() == doctest::Approx(1.0).epsilon(1e-7));
        const double F2 = evaluate_functional(pr, s.beta, omega, v, 0.05);
        CHECK(rel(F2, free_energy_of_state(s, v)) < 1e-6);
        CHECK(rel(s.free_energy, free_energy_of_state(s, v)) < 1e-12);
        CHECK(sc_relative_entropy_to_state(pr, s) == doctest::Approx(0.0).epsilon(1e-12));
    }
}

TEST_CASE("free energy is nondecreasing in lambda for a positive-type potential") {
    const Potential v = make_gaussian_potential(1.0, 1.0);
    const double beta = 1.2 * beta_critical(2.0);
    double prev = -INFINITY;
    for (double lambda : {0.0, 0.01, 0.03, 0.05}) {
        const double F = solve_selfconsistent(beta, 2.0, v, lambda).free_energy;
        CHECK(F >= prev);
        prev = F;
    }
}

TEST_CASE("initial condition does not matter") {
    const Potential v = make_gaussian_potential(1.0, 1.0);
    const double beta = 1.2 * beta_critical(2.0);
    SCOptions a, b;
    b.init = SCOptions::Init::Ball;
    b.parallel = false;
    const SCState s1 = solve_selfconsistent(beta, 2.0, v, 0.05, a);
    const SCState s2 = solve_selfconsistent(beta, 2.0, v, 0.05, b);
    CHECK(std::abs(s1.g - s2.g) < 1e-8);
    CHECK(std::abs(s1.free_energy - s2.free_energy) < 1e-9);
}

TEST_CASE("relative entropy is positive away from the minimizer") {
    const Potential v = make_gaussian_potential(1.0, 1.0);
    const SCState s = solve_selfconsistent(0.9 * beta_critical(2.0), 2.0, v, 0.05);
    PhaseSpacePair pr = reconstruct_pair(s);
    for (auto& x : pr.gamma) x *= 1.1;
    CHECK(sc_relative_entropy_to_state(pr, s) > 0.0);
}

TEST_CASE("errors") {
    const Potential v = make_gaussian_potential(1.0, 1.0);
    CHECK_THROWS_AS(solve_selfconsistent(1.0, 1.0, v, 0.05), ValidationError);
    CHECK_THROWS_AS(solve_selfconsistent(-1.0, 1.0, v, 0.0), DomainError);
    SCOptions o;
    o.max_iter = 2;
    CHECK_THROWS_AS(solve_selfconsistent(1.2 * beta_critical(2.0), 2.0, v, 0.05, o), ConvergenceError);
}
