// Acceptance run: one PASS/FAIL line per criterion. Pass criterion numbers to run a subset.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include <boost/math/special_functions/zeta.hpp>

#include "bosegas/critical_temperature.hpp"
#include "bosegas/hartree_radial.hpp"
#include "bosegas/ideal_gas.hpp"
#include "bosegas/inequality_lab.hpp"
#include "bosegas/sc_solver.hpp"
#include "bosegas/special_functions.hpp"
#include "oracle_values.hpp"
#include "oracles.hpp"

using namespace bosegas;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

double rel_err(double a, double b) {
    if (b == 0.0) return std::abs(a);
    return std::abs(a - b) / std::abs(b);
}

const double kOmega = 2.0;
const Potential& gaussian() {
    static const Potential v = make_gaussian_potential(1.0, 1.0);
    return v;
}

// 1. ideal-gas equivalence at lambda = 0
Outcome criterion1() {
    const auto t0 = Clock::now();
    const double z3 = boost::math::zeta(3.0), z4 = boost::math::zeta(4.0);
    const double omega = 1.0;
    double worst = 0;
    for (int i = 0; i < 10; ++i) {
        const double bw = (0.7 + 2.3 * i / 9.0) * std::cbrt(z3);
        const double beta = bw / omega;
        const SCState s = solve_selfconsistent(beta, omega, gaussian(), 0.0);
        const double g0 = std::max(0.0, 1.0 - z3 / (bw * bw * bw));
        const double mu0 = ideal_mu0(beta, omega);
        const double F0 = g0 > 0 ? -z4 / (beta * bw * bw * bw)
                                 : -special::polylog_exp(special::PolylogOrder::Four, -beta * mu0) / (beta * bw * bw * bw) + mu0;
        worst = std::max({worst, rel_err(s.g, g0), rel_err(s.mu, mu0), rel_err(s.free_energy, F0)});
    }
    const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    return {worst < 1e-6 && secs < 10, fmt("max relative error %.2e over 10 temperatures, %.1f s", worst, secs)};
}

// 2 and 9 share the (lambda, beta) grid
struct CriticalRun {
    double lambda, beta_c, lo, hi;
    SCState above, below;
};

const std::vector<CriticalRun>& critical_runs() {
    static const std::vector<CriticalRun> runs = [] {
        std::vector<CriticalRun> out;
        const double b0 = beta_critical(kOmega);
        for (double lambda : {0.01, 0.05}) {
            const TcResult r = find_tc(lambda, kOmega, gaussian());
            out.push_back({lambda, r.beta_c, r.bracket.first, r.bracket.second,
                           solve_selfconsistent(r.beta_c + 1e-3 * b0, kOmega, gaussian(), lambda),
                           solve_selfconsistent(r.beta_c - 1e-3 * b0, kOmega, gaussian(), lambda)});
        }
        return out;
    }();
    return runs;
}

Outcome criterion2() {
    bool ok = true;
    std::string d;
    for (const auto& r : critical_runs()) {
        const bool in_bracket = r.beta_c >= r.lo && r.beta_c <= r.hi;
        const bool cond = r.above.g > 0 && r.above.mu == 0.0;
        const bool gas = r.below.g == 0.0 && r.below.mu < 0;
        ok = ok && in_bracket && cond && gas;
        d += fmt("lambda=%.2f beta_c/beta0=%.9f in[%.6f,%.6f]=%d g+=%.2e mu-=%.2e; ", r.lambda,
                 r.beta_c / beta_critical(kOmega), r.lo / beta_critical(kOmega), r.hi / beta_critical(kOmega),
                 int(in_bracket), r.above.g, r.below.mu);
    }
    return {ok, d};
}

Outcome criterion3() {
    const auto t0 = Clock::now();
    const double xi = xi_coefficient(kOmega, gaussian());
    const double xi2d = oracle::xi_direct_2d(kOmega, 1.0, 1.0);
    const SlopeReport s = tc_slope_check(kOmega, gaussian(), {0.04, 0.02, 0.01});
    const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    const double red = rel_err(xi, xi2d), frozen = rel_err(xi, oracle::kXi2D);
    const bool ok = xi > 0 && s.relative_deviation < 0.05 && red < 1e-5 && frozen < 1e-5 && secs < 120;
    return {ok, fmt("Xi=%.10f 2D=%.10f (rel %.1e, frozen rel %.1e), extrapolated slope %.10f (rel %.1e), %.1f s", xi,
                    xi2d, red, frozen, s.extrapolated, s.relative_deviation, secs)};
}

Outcome criterion4() {
    const TcOptions opts;
    double worst_ratio = 0;
    for (double lambda : {0.01, 0.03, 0.05}) {
        const GridPtr g = tc_grid(lambda, kOmega, gaussian(), opts.n_points);
        const ConvolutionOperator op(gaussian(), g);
        std::mt19937_64 rng(1000 + static_cast<int>(lambda * 1000));
        for (int k = 0; k < 50; ++k) {
            const RadialDensity a = random_unit_density(g, rng), b = random_unit_density(g, rng);
            worst_ratio = std::max(worst_ratio, t_lipschitz_ratio(a, b, lambda, kOmega, op));
        }
    }
    const double lambda = 0.05;
    const TcResult ref = find_tc(lambda, kOmega, gaussian(), opts);
    std::mt19937_64 rng(77);
    double dbeta = 0, drho = 0;
    for (double width : {0.3, 1.0, 3.0}) {
        TcOptions o = opts;
        o.init = random_unit_density(ref.rho_c.grid, rng, width);
        const TcResult r = find_tc(lambda, kOmega, gaussian(), o);
        dbeta = std::max(dbeta, std::abs(r.beta_c - ref.beta_c) / ref.beta_c);
        std::vector<double> diff(r.rho_c.values.size());
        for (std::size_t i = 0; i < diff.size(); ++i) diff[i] = std::abs(r.rho_c.values[i] - ref.rho_c.values[i]);
        drho = std::max(drho, ref.rho_c.grid->integrate_3d(diff));
    }
    const bool ok = worst_ratio < 1 && dbeta <= 10 * opts.tol && drho <= 10 * opts.tol;
    return {ok, fmt("max Lipschitz ratio %.4f (150 pairs), fixed point spread: beta %.1e, rho L1 %.1e (limit %.0e)",
                    worst_ratio, dbeta, drho, 10 * opts.tol)};
}

// 5, 6 and 7 share the Hartree runs
struct FiniteNRun {
    double N, lambda;
    HartreeState h;
    DistanceReport d;
};

const std::vector<FiniteNRun>& finite_n_runs() {
    static const std::vector<FiniteNRun> runs = [] {
        std::vector<FiniteNRun> out;
        const double beta = 2.0 * std::cbrt(boost::math::zeta(3.0)) / kOmega;
        for (double lambda : {0.0, 0.05}) {
            const SCState sc = solve_selfconsistent(beta, kOmega, gaussian(), lambda);
            for (double N : {1024.0, 4096.0, 16384.0}) {
                const auto t0 = Clock::now();
                HartreeState h = solve_hartree(N, beta, kOmega, gaussian(), lambda);
                DistanceReport d = compare_to_semiclassical(h, sc);
                std::fprintf(stderr, "  hartree N=%.0f lambda=%.2f: %d iterations, %.1f s\n", N, lambda, h.iterations,
                             std::chrono::duration<double>(Clock::now() - t0).count());
                out.push_back({N, lambda, std::move(h), std::move(d)});
            }
        }
        return out;
    }();
    return runs;
}

Outcome criterion5() {
    const auto t0 = Clock::now();
    const auto& runs = finite_n_runs();
    const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    bool monotone = true;
    std::string d;
    double final_err = 0;
    for (double lambda : {0.0, 0.05}) {
        double pc = INFINITY, ph = INFINITY;
        d += fmt("lambda=%.2f:", lambda);
        for (const auto& r : runs) {
            if (r.lambda != lambda) continue;
            monotone = monotone && r.d.condensate_error <= pc && r.d.husimi_discrepancy <= ph;
            pc = r.d.condensate_error;
            ph = r.d.husimi_discrepancy;
            d += fmt(" N=%.0f |N0/N-g|=%.4f husimi=%.4f;", r.N, r.d.condensate_error, r.d.husimi_discrepancy);
            if (lambda == 0.0 && r.N == 16384.0) final_err = r.d.condensate_error;
        }
        d += " ";
    }
    const bool small = final_err < 0.02;
    d += fmt("monotone=%d, lambda=0 N=16384 error %.4f vs bound 0.02, %.0f s", int(monotone), final_err, secs);
    return {monotone && small && secs < 900, d};
}

Outcome criterion6() {
    const auto& runs = finite_n_runs();
    double lo = INFINITY, hi = 0, free_dev = 0;
    for (const auto& r : runs) {
        const double ratio = spectral_gap(r.h) / (r.h.hbar * kOmega);
        if (r.lambda > 0) {
            lo = std::min(lo, ratio);
            hi = std::max(hi, ratio);
        } else {
            free_dev = std::max(free_dev, std::abs(ratio - 1.0));
        }
    }
    // v = 0 with the interaction switched off entirely
    const double beta = 2.0 * std::cbrt(boost::math::zeta(3.0)) / kOmega;
    const HartreeState z = solve_hartree(4096, beta, kOmega, make_zero_potential(), 0.0);
    free_dev = std::max(free_dev, std::abs(spectral_gap(z) / (z.hbar * kOmega) - 1.0));
    const double spread = (hi - lo) / hi;
    const bool ok = lo >= 0.5 && spread < 0.2 && free_dev < 1e-3;
    return {ok, fmt("lambda=0.05 gap/(hbar omega) in [%.4f, %.4f] (spread %.1f%%), v=0 deviation %.1e", lo, hi,
                    100 * spread, free_dev)};
}

Outcome criterion7() {
    const auto& runs = finite_n_runs();
    const HartreeState& h = runs[3].h;  // N = 1024, lambda = 0.05
    const double F = h.free_energy;
    const double tol = 1e-9 * std::abs(F);
    const IdealState id = ideal_state(h.beta, h.omega, h.grid);
    const double id_mass = id.rho0.thermal_mass();
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double worst = -INFINITY;
    std::vector<RadialDensity> etas;
    RadialDensity ideal{h.grid, id.rho0.values, 0.0};
    for (auto& x : ideal.values) x *= h.N / id_mass;
    etas.push_back(ideal);
    for (int k = 0; k < 10; ++k) {
        // random nonnegative profile of mass N: mixture of rho^H, the ideal profile and a Gaussian
        const double a = u(rng), b = u(rng) * (1 - a), s = 0.2 + 2 * u(rng);
        RadialDensity eta{h.grid, std::vector<double>(h.grid->size()), 0.0};
        std::vector<double> gauss(h.grid->size());
        for (std::size_t i = 0; i < gauss.size(); ++i) gauss[i] = std::exp(-0.5 * h.grid->r[i] * h.grid->r[i] / (s * s));
        const double gm = h.grid->integrate_3d(gauss);
        for (std::size_t i = 0; i < gauss.size(); ++i)
            eta.values[i] = a * h.rho.values[i] + b * ideal.values[i] + (1 - a - b) * h.N * gauss[i] / gm;
        etas.push_back(std::move(eta));
    }
    for (const auto& eta : etas) worst = std::max(worst, dual_objective(eta, h) - F);
    const double at_opt = rel_err(dual_objective(h.rho, h), F);
    return {worst <= tol && at_opt < 1e-6,
            fmt("max(dual - F) over 11 profiles %.3e (tol %.1e), |dual(rho^H) - F|/|F| = %.1e", worst, tol, at_opt)};
}

Outcome criterion8() {
    const auto t0 = Clock::now();
    bool ok = true;
    std::string d;
    for (const auto& name : lab::suite_names()) {
        const lab::SuiteReport r = lab::run_suite(name, 7);
        ok = ok && r.passed;
        const bool is_max = r.criterion.rfind("max", 0) == 0;
        d += fmt("%s: %d instances, %s %s = %.3g (need %s, t = %.0e); ", r.name.c_str(), r.instances,
                 is_max ? "max" : "min", r.quantity.c_str(), is_max ? r.max_value : r.min_value,
                 r.criterion.c_str(), r.threshold);
    }
    const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    d += fmt("%.1f s", secs);
    return {ok && secs < 300, d};
}

Outcome criterion9() {
    double worst = 0;
    const double b0 = beta_critical(kOmega);
    for (const auto& r : critical_runs())
        for (const SCState* s : {&r.above, &r.below}) {
            const double F1 = free_energy_of_state(*s, gaussian());
            const double F2 = evaluate_functional(reconstruct_pair(*s), s->beta, kOmega, gaussian(), r.lambda);
            worst = std::max(worst, rel_err(F2, F1));
        }
    for (double lambda : {0.01, 0.05})
        for (double ratio : {0.8, 1.5}) {
            const SCState s = solve_selfconsistent(ratio * b0, kOmega, gaussian(), lambda);
            const double F2 = evaluate_functional(reconstruct_pair(s), s.beta, kOmega, gaussian(), lambda);
            worst = std::max(worst, rel_err(F2, free_energy_of_state(s, gaussian())));
        }
    double mehler = 0;
    const double omega = 1.0, hbar = 0.5;
    for (double tw : {0.1, 0.5, 1.0, 2.0, 5.0}) {
        const double t = tw / (hbar * omega);
        const double width = 12 * std::sqrt(2 * hbar / omega / std::tanh(0.5 * tw));
        auto diag = [&](double r) {
            return 4 * oracle::pi * r * r * special::mehler_kernel(t, {r, 0, 0}, {r, 0, 0}, omega, hbar);
        };
        const double tr = oracle::gk(diag, 0.0, 0.3 * width) + oracle::gk(diag, 0.3 * width, width);
        const double closed = std::pow(2 * std::sinh(0.5 * tw), -3);
        mehler = std::max({mehler, rel_err(tr, closed), rel_err(special::mehler_trace(t, omega, hbar), closed)});
    }
    return {worst < 1e-6 && mehler < 1e-8,
            fmt("functional vs state free energy max rel %.1e over 8 states; Mehler trace max rel %.1e", worst, mehler)};
}

}  // namespace

int main(int argc, char** argv) {
    const std::vector<std::function<Outcome()>> all = {criterion1, criterion2, criterion3, criterion4, criterion5,
                                                       criterion6, criterion7, criterion8, criterion9};
    std::set<int> pick;
    for (int i = 1; i < argc; ++i) pick.insert(std::atoi(argv[i]));
    int failed = 0;
    for (int k = 1; k <= 9; ++k) {
        if (!pick.empty() && !pick.count(k)) continue;
        Outcome o;
        const auto t0 = Clock::now();
        try {
            o = all[k - 1]();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
        std::printf("criterion %d: %s  %s [%.1f s]\n", k, o.pass ? "PASS" : "FAIL", o.detail.c_str(), secs);
        std::fflush(stdout);
        failed += !o.pass;
    }
    return failed == 0 ? 0 : 1;
}
