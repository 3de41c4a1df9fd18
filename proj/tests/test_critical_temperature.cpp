#include "doctest.h"

#include <cmath>
#include <random>

#include "bosegas/critical_temperature.hpp"
#include "bosegas/errors.hpp"
#include "bosegas/ideal_gas.hpp"
#include "bosegas/sc_solver.hpp"
#include "oracle_values.hpp"

using namespace bosegas;

TEST_CASE("lambda = 0 returns the ideal transition exactly") {
    const Potential v = make_gaussian_potential(1.0, 1.0);
    const TcResult r = find_tc(0.0, 2.0, v);
    CHECK(r.beta_c == beta_critical(2.0));
    CHECK(r.rho_c.mass() == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("transition point: bracket and phase switch") {
    const Potential v = make_gaussian_potential(1.0, 1.0);
    const double omega = 2.0, b0 = beta_critical(omega);
    for (double lambda : {0.01, 0.05}) {
        const TcResult r = find_tc(lambda, omega, v);
        const auto [lo, hi] = tc_bracket(lambda, omega, v);
        CHECK(lo < b0);
        CHECK(hi > b0);
        CHECK(r.beta_c >= lo);
        CHECK(r.beta_c <= hi);
        CHECK(r.beta_c > b0);
        CHECK(r.residual < 1e-10);
        CHECK(r.rho_c.mass() == doctest::Approx(1.0).epsilon(1e-9));
        const SCState above = solve_selfconsistent(r.beta_c + 1e-3 * b0, omega, v, lambda);
        const SCState below = solve_selfconsistent(r.beta_c - 1e-3 * b0, omega, v, lambda);
        CHECK(above.g > 0.0);
        CHECK(above.mu == 0.0);
        CHECK(below.g == 0.0);
        CHECK(below.mu < 0.0);
    }
}

TEST_CASE("T is a contraction and its fixed point is unique") {
    const Potential v = make_gaussian_potential(1.0, 1.0);
    const double omega = 2.0, lambda = 0.05;
    const GridPtr g = tc_grid(lambda, omega, v);
    const ConvolutionOperator op(v, g);
    std::mt19937_64 rng(11);
    for (int k = 0; k < 5; ++k) {
        const RadialDensity a = random_unit_density(g, rng), b = random_unit_density(g, rng);
        CHECK(a.mass() == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(t_lipschitz_ratio(a, b, lambda, omega, op) < 1.0);
    }
    TcOptions o;
    o.init = random_unit_density(g, rng, 0.5);
    const TcResult r1 = find_tc(lambda, omega, v), r2 = find_tc(lambda, omega, v, o);
    CHECK(std::abs(r1.beta_c - r2.beta_c) < 10 * o.tol * r1.beta_c);
}

TEST_CASE("mean-field shift coefficient against the 2D quadrature") {
    const Potential v = make_gaussian_potential(1.0, 1.0);
    const double xi = xi_coefficient(2.0, v);
    CHECK(xi > 0.0);
    CHECK(std::abs(xi - oracle::kXi2D) < 1e-5 * oracle::kXi2D);
}

TEST_CASE("slope of the transition shift") {
    const Potential v = make_gaussian_potential(1.0, 1.0);
    const SlopeReport s = tc_slope_check(2.0, v, {0.04, 0.02, 0.01});
    CHECK(s.relative_deviation < 0.05);
    // first-order law: the slope error halves with lambda
    const double e2 = std::abs(s.slopes[1] - s.xi), e1 = std::abs(s.slopes[2] - s.xi);
    CHECK(e2 / e1 > 1.6);
    CHECK(e2 / e1 < 2.4);
    for (std::size_t i = 0; i < 3; ++i) CHECK(s.beta_c[i] > s.beta0);
}

TEST_CASE("inadmissible coupling") {
    const Potential v = make_gaussian_potential(1.0, 1.0);
    CHECK_THROWS_AS(find_tc(0.05, 1.0, v), ValidationError);
    CHECK_THROWS_AS(xi_coefficient(1.0, v), ValidationError);
}
