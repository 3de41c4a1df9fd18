#include "doctest.h"

#include <cmath>
#include <numbers>
#include <random>

#include <Eigen/Eigenvalues>

#include "bosegas/errors.hpp"
#include "bosegas/inequality_lab.hpp"
#include "bosegas/special_functions.hpp"

using namespace bosegas;
using namespace bosegas::lab;

TEST_CASE("coherent-state resolution of the identity") {
    CHECK(coherent_resolution_check(0.5, window_probe(0.5)) < 1e-6);
    CHECK(coherent_resolution_check(0.3, oscillator_probe(0.3, 1.0, {1, 0, 0})) < 1e-6);
    std::mt19937_64 rng(5);
    for (int k = 0; k < 2; ++k) {
        const HermiteProbe p = random_oscillator_probe(0.4, 1.5, 5, rng);
        CHECK(p.modes.size() == 5);
        CHECK(coherent_resolution_check(0.4, p) < 1e-5);
    }
}

TEST_CASE("Berezin-Lieb: affine zeta is sharp, convex zeta leaves a margin") {
    RadialSymbol bose;
    const double beta = 1.3;
    bose.F = [beta](double E) { return 1.0 / std::expm1(beta * E); };
    bose.e_max = 45.0 / beta;
    bose.label = "bose factor";
    auto linear = [](double x) { return 2.0 * x; };
    auto f = [](double x) { return special::bose_entropy_f(std::max(x, 0.0)); };
    CHECK(std::abs(berezin_lieb_check(bose, linear, 0.5, 200).margin) < 1e-8);
    CHECK(berezin_lieb_check(bose, f, 0.5, 200).margin >= -1e-8);

    RadialSymbol gauss;
    gauss.F = [](double E) { return std::exp(-E); };
    gauss.e_max = 45.0;
    const auto q1 = berezin_lieb_check(gauss, [](double x) { return x * x; }, 0.5, 200);
    const auto q3 = berezin_lieb_check(gauss, [](double x) { return 3 * x * x; }, 0.5, 200);
    CHECK(q1.margin > 0.0);
    CHECK(q3.margin == doctest::Approx(3 * q1.margin).epsilon(1e-8));
    CHECK(q1.tail < 1e-8);
    CHECK_THROWS_AS(berezin_lieb_check(gauss, [](double x) { return x * x; }, 0.5, 3), QuadratureError);
    CHECK_THROWS_AS(berezin_lieb_check(gauss, [](double x) { return x + 1; }, 0.5, 200), PreconditionError);

    SeparableSymbol sep;
    sep.c = {1.0, 0.5};
    sep.phi = {[](double e) { return e < 1.2 ? 1.0 : 0.0; }, [](double e) { return std::exp(-e); }};
    sep.breaks = {1.2};
    sep.e_max = 40.0;
    CHECK(berezin_lieb_check(sep, [](double x) { return x * x; }, 0.6, 110).margin >= -1e-8);
    CHECK(std::abs(berezin_lieb_check(sep, linear, 0.6, 110).margin) < 1e-8);
}

TEST_CASE("trace convexity against an eigenbasis expansion") {
    std::mt19937_64 rng(9);
    std::normal_distribution<double> g;
    const int d = 7, k = 3;
    Eigen::MatrixXd G(d, d), X(d, k);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) G(i, j) = g(rng);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < k; ++j) X(i, j) = g(rng);
    const Eigen::MatrixXd A = 0.5 * (G + G.transpose());
    const Eigen::MatrixXd V = Eigen::HouseholderQR<Eigen::MatrixXd>(X).householderQ() * Eigen::MatrixXd::Identity(d, k);
    const Eigen::MatrixXd Q = V * V.transpose();
    // f(x) = x^2: tr[Q A^2 Q] - tr[(V^T A V)^2] = ||(1-Q) A V||_F^2
    const double ref = ((Eigen::MatrixXd::Identity(d, d) - Q) * A * V).squaredNorm();
    const double m = trace_convexity_check(A, Q, [](double x) { return x * x; });
    CHECK(m == doctest::Approx(ref).epsilon(1e-10));
    CHECK(m >= 0.0);
    const Eigen::MatrixXd P = G * G.transpose() / d;
    CHECK(trace_convexity_check(P, Q, [](double x) { return special::bose_entropy_f(std::max(x, 0.0)); }) >= -1e-10);
    // Q = identity leaves nothing
    CHECK(std::abs(trace_convexity_check(A, Eigen::MatrixXd::Identity(d, d), [](double x) { return x * x; })) < 1e-10);
}

TEST_CASE("phase coercivity: positivity and the second-order limit") {
    PhaseSampleSet s{{0.0, 2.0, 0.3}, {1.0, 0.5, 0.3}, {1.0, 0.7, 2.0}};
    CHECK(phase_coercivity_ratio(s) > 0.0);
    CHECK(phase_relative_entropy(s) > 0.0);
    // single atom a = (1+eps) b: ratio -> [eps^2 b/(2(1+b))] [2 b (1+b)] / (eps b)^2 = 1
    for (double b : {0.1, 1.0, 30.0}) {
        PhaseSampleSet t{{b * (1 + 1e-4)}, {b}, {1.0}};
        CHECK(phase_coercivity_ratio(t) == doctest::Approx(1.0).epsilon(1e-3));
    }
    CHECK(bose_bregman(2.0, 2.0) == 0.0);
    CHECK(bose_bregman(0.0, 1.0) == doctest::Approx(std::log(2.0)).epsilon(1e-14));
}

TEST_CASE("operator coercivity: diagonal reduction and positivity") {
    FiniteOperatorPair pr;
    pr.a = Eigen::Vector3d(0.2, 1.5, 3.0).asDiagonal();
    pr.b = Eigen::Vector3d(0.5, 1.0, 3.5).asDiagonal();
    const double scalar = bose_bregman(0.2, 0.5) + bose_bregman(1.5, 1.0) + bose_bregman(3.0, 3.5);
    CHECK(operator_relative_entropy(pr) == doctest::Approx(scalar).epsilon(1e-12));
    PhaseSampleSet atoms{{0.2, 1.5, 3.0}, {0.5, 1.0, 3.5}, {1, 1, 1}};
    CHECK(operator_relative_entropy(pr) == doctest::Approx(phase_relative_entropy(atoms)).epsilon(1e-12));
    std::mt19937_64 rng(2);
    std::normal_distribution<double> g;
    for (int d : {2, 4, 8}) {
        Eigen::MatrixXd X(d, d), Y(d, d);
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) {
                X(i, j) = g(rng);
                Y(i, j) = g(rng);
            }
        FiniteOperatorPair q{X * X.transpose(), Y * Y.transpose() + 0.1 * Eigen::MatrixXd::Identity(d, d)};
        CHECK(operator_coercivity_ratio(q) > 0.0);
    }
}

TEST_CASE("positive-type lower bound") {
    const Potential v = make_gaussian_potential(1.0, 1.0);
    const GridPtr grid = quad::make_radial_grid(10.0, 256);
    RadialDensity zero{grid, std::vector<double>(grid->size(), 0.0), 0.0};
    CHECK(positive_type_bound_check({{0.1, 0.2, 0.3}}, zero, v) == doctest::Approx(0.5));
    std::mt19937_64 rng(4);
    std::normal_distribution<double> g;
    std::vector<special::Vec3> pts(20);
    for (auto& p : pts) p = {g(rng), g(rng), g(rng)};
    RadialDensity eta{grid, std::vector<double>(grid->size()), 0.0};
    for (std::size_t j = 0; j < grid->size(); ++j)
        eta.values[j] = 20 * std::pow(std::numbers::pi, -1.5) * std::exp(-grid->r[j] * grid->r[j]);
    CHECK(positive_type_bound_check(pts, eta, v) >= -1e-8);
}

TEST_CASE("suites are seeded and reproducible") {
    const auto names = suite_names();
    CHECK(names.size() == 6);
    const SuiteReport a = run_suite("phase_coercivity", 7, 40), b = run_suite("phase_coercivity", 7, 40);
    CHECK(a.values == b.values);
    CHECK(a.passed);
    CHECK(a.instances == 40);
    const SuiteReport c = run_suite("phase_coercivity", 8, 40);
    CHECK(c.values != a.values);
    const SuiteReport t = run_suite("trace_convexity", 7, 30);
    CHECK(t.passed);
    CHECK_THROWS(run_suite("nonsense", 7));
}
