#include "bosegas/hartree_radial.hpp"

#include <lapacke.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "bosegas/errors.hpp"
#include "bosegas/kernels.hpp"

namespace bosegas {

namespace {

constexpr double kPi = std::numbers::pi;

struct Spectrum {
    std::vector<RadialChannel> channels;
    double e0 = 0, e_cut = 0;
};

struct RadialOperator {
    const RadialGrid* grid;
    double hbar, omega;
    std::vector<double> U;  // interior nodes

    std::size_t M() const { return grid->size() - 2; }
    double h() const { return grid->r[1] - grid->r[0]; }
    double off() const { return -hbar * hbar / (h() * h()); }
    std::vector<double> diagonal(int l) const {
        const std::size_t m = M();
        std::vector<double> d(m);
        const double kin = 2.0 * hbar * hbar / (h() * h());
        const double cent = hbar * hbar * l * (l + 1.0);
        for (std::size_t i = 0; i < m; ++i) {
            const double r = grid->r[i + 1];
            d[i] = kin + cent / (r * r) + 0.25 * omega * omega * r * r + U[i];
        }
        return d;
    }
};

// number of eigenvalues below x (Sturm sequence of the LDL^T pivots)
std::size_t sturm_count(const std::vector<double>& d, double e, double x) {
    std::size_t cnt = 0;
    double q = d[0] - x;
    if (q < 0) ++cnt;
    for (std::size_t i = 1; i < d.size(); ++i) {
        if (q == 0.0) q = 1e-300;
        q = d[i] - x - e * e / q;
        if (q < 0) ++cnt;
    }
    return cnt;
}

void tridiag_eigen(std::vector<double> d, double e, std::size_t k, bool vectors, std::vector<double>& w,
                   std::vector<double>& z) {
    const lapack_int n = static_cast<lapack_int>(d.size());
    std::vector<double> off(d.size(), e);
    w.assign(d.size(), 0.0);
    if (vectors) z.assign(d.size() * k, 0.0);
    std::vector<lapack_int> isuppz(2 * k + 2);
    lapack_int m = 0;
    double dummy = 0.0;
    const lapack_int info =
        LAPACKE_dstevr(LAPACK_COL_MAJOR, vectors ? 'V' : 'N', 'I', n, d.data(), off.data(), 0.0, 0.0, 1,
                       static_cast<lapack_int>(k), 0.0, &m, w.data(), vectors ? z.data() : &dummy, n,
                       isuppz.data());
    if (info != 0 || m != static_cast<lapack_int>(k))
        throw ConvergenceError("dstevr failed (info " + std::to_string(info) + ")", 0.0, 0);
    w.resize(k);
}

Spectrum diagonalize(const RadialOperator& op, double beta, double cutoff_weight, bool vectors, bool parallel) {
    Spectrum sp;
    const double e = op.off();
    {
        std::vector<double> w, z;
        tridiag_eigen(op.diagonal(0), e, 1, false, w, z);
        sp.e0 = w[0];
    }
    sp.e_cut = sp.e0 + std::log1p(1.0 / cutoff_weight) / beta;
    std::vector<std::size_t> counts;
    for (int l = 0;; ++l) {
        const std::size_t c = sturm_count(op.diagonal(l), e, sp.e_cut);
        if (c == 0) break;
        if (l > 100000) throw ConvergenceError("angular momentum cutoff not reached", 0.0, l);
        counts.push_back(c);
    }
    sp.channels.resize(counts.size());
    const double sqh = std::sqrt(op.h());
    kernels::parallel_for(
        static_cast<long>(counts.size()),
        [&](long l) {
            RadialChannel& ch = sp.channels[l];
            ch.ell = static_cast<int>(l);
            tridiag_eigen(op.diagonal(static_cast<int>(l)), e, counts[l], vectors, ch.energies, ch.vectors);
            // sum_i h u_i^2 = 1
            for (auto& x : ch.vectors) x /= sqh;
        },
        parallel);
    sp.e0 = sp.channels[0].energies[0];
    return sp;
}

double particle_number(const Spectrum& sp, double beta, double mu) {
    double n = 0.0;
    for (const auto& ch : sp.channels) {
        double s = 0.0;
        for (double e : ch.energies) s += 1.0 / std::expm1(beta * (e - mu));
        n += (2 * ch.ell + 1) * s;
    }
    return n;
}

// mu below e0 with particle number N; bisection in y = log(beta (e0 - mu))
double solve_mu(const Spectrum& sp, double beta, double N) {
    auto mu_of = [&](double y) { return sp.e0 - std::exp(y) / beta; };
    // y = -log(N) - 3 puts more than N particles in the ground mode alone
    double lo = -std::log(N) - 3.0, hi = std::log(50.0);
    while (particle_number(sp, beta, mu_of(hi)) > N) {
        hi += 1.0;
        if (hi > 30.0) throw ConvergenceError("chemical potential bracket failure", 0.0, 0);
    }
    if (particle_number(sp, beta, mu_of(lo)) < N)
        throw ConvergenceError("chemical potential bracket failure", 0.0, 0);
    for (int it = 0; it < 200 && hi - lo > 1e-14; ++it) {
        const double mid = 0.5 * (lo + hi);
        // the particle number decreases in y
        if (particle_number(sp, beta, mu_of(mid)) > N) lo = mid;
        else hi = mid;
    }
    return mu_of(0.5 * (lo + hi));
}

double grand_potential(const Spectrum& sp, double beta, double mu) {
    double s = 0.0;
    for (const auto& ch : sp.channels) {
        double t = 0.0;
        for (double e : ch.energies) t += std::log(-std::expm1(-beta * (e - mu)));
        s += (2 * ch.ell + 1) * t;
    }
    return s / beta;
}

void set_occupations(Spectrum& sp, double beta, double mu) {
    for (auto& ch : sp.channels) {
        ch.occupations.resize(ch.energies.size());
        for (std::size_t n = 0; n < ch.energies.size(); ++n) ch.occupations[n] = 1.0 / std::expm1(beta * (ch.energies[n] - mu));
    }
}

RadialDensity density_of(const Spectrum& sp, const GridPtr& grid, bool parallel) {
    const std::size_t M = grid->size() - 2;
    std::vector<double> acc(M, 0.0);
    for (const auto& ch : sp.channels) {
        std::vector<double> wgt(ch.count());
        for (std::size_t n = 0; n < ch.count(); ++n) wgt[n] = (2 * ch.ell + 1) * ch.occupations[n] / (4.0 * kPi);
        if (parallel) kernels::accumulate_density_parallel(ch.vectors.data(), wgt.data(), ch.count(), M, M, acc.data());
        else kernels::accumulate_density_serial(ch.vectors.data(), wgt.data(), ch.count(), M, M, acc.data());
    }
    RadialDensity rho{grid, std::vector<double>(grid->size(), 0.0), 0.0};
    for (std::size_t i = 0; i < M; ++i) {
        const double r = grid->r[i + 1];
        rho.values[i + 1] = acc[i] / (r * r);
    }
    // even extrapolation a + b r^2 through the first two nodes
    rho.values[0] = (4.0 * rho.values[1] - rho.values[2]) / 3.0;
    return rho;
}

double l1_distance(const RadialGrid& g, const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) s += g.w[i] * g.r[i] * g.r[i] * std::abs(a[i] - b[i]);
    return 4.0 * kPi * s;
}

// oscillator-shell estimate of the occupation above the cutoff
double tail_estimate(const Spectrum& sp, double beta, double mu, double hbar, double omega) {
    const double hw = hbar * omega;
    const double K = std::ceil((sp.e_cut - sp.e0) / hw);
    double s = 0.0;
    for (int j = 0; j < 100000; ++j) {
        const double n = K + j;
        const double term = 0.5 * (n + 1) * (n + 2) / std::expm1(beta * (sp.e_cut + j * hw - mu));
        s += term;
        if (term < 1e-20 * std::max(s, 1e-300)) break;
    }
    return s;
}

bool interacting(double lambda, const Potential& v) { return lambda != 0.0 && !v.is_zero(); }

std::vector<double> mean_field(const ConvolutionOperator& op, const RadialDensity& rho, double lambda, double N,
                               bool parallel) {
    const std::size_t M = rho.grid->size() - 2;
    std::vector<double> U(M, 0.0);
    if (lambda == 0.0 || op.potential().is_zero()) return U;
    const auto conv = op.apply(rho, parallel);
    for (std::size_t i = 0; i < M; ++i) U[i] = lambda * conv[i + 1] / N;
    return U;
}

}  // namespace

std::size_t HartreeState::mode_count() const {
    std::size_t n = 0;
    for (const auto& c : channels) n += c.count();
    return n;
}

double hartree_radius(double N, double beta, double omega) {
    const double hbar = std::cbrt(1.0 / N);
    return std::max(std::sqrt(160.0 / (beta * omega * omega)), std::sqrt(160.0 * hbar / omega));
}

HartreeState solve_hartree(double N, double beta, double omega, const Potential& v, double lambda,
                           const HartreeOptions& opts) {
    if (!(N >= 10)) throw DomainError("solve_hartree: N must be at least 10");
    if (!(beta > 0 && omega > 0)) throw DomainError("solve_hartree: beta and omega must be positive");
    require_admissible(v, omega, lambda);
    HartreeState s;
    s.N = N;
    s.hbar = std::cbrt(1.0 / N);
    s.beta = beta;
    s.omega = omega;
    s.lambda = lambda;
    s.potential = interacting(lambda, v) ? v : make_zero_potential();
    s.grid = quad::make_uniform_grid(hartree_radius(N, beta, omega), opts.grid_points);
    const ConvolutionOperator op(s.potential, s.grid);

    RadialDensity rho_in{s.grid, std::vector<double>(s.grid->size(), 0.0), 0.0};
    if (opts.init) {
        if (opts.init->grid->size() != s.grid->size() || opts.init->grid->r_max != s.grid->r_max)
            throw PreconditionError("solve_hartree: initial density lives on a different grid");
        rho_in = *opts.init;
    }
    double theta = opts.theta;
    double prev = std::numeric_limits<double>::infinity();
    Spectrum sp;
    RadialDensity rho_out;
    bool done = false;
    for (int it = 1; it <= opts.max_iter; ++it) {
        RadialOperator H{s.grid.get(), s.hbar, omega, mean_field(op, rho_in, lambda, N, opts.parallel)};
        sp = diagonalize(H, beta, opts.cutoff_weight, true, opts.parallel);
        s.mu = solve_mu(sp, beta, N);
        set_occupations(sp, beta, s.mu);
        rho_out = density_of(sp, s.grid, opts.parallel);
        s.iterations = it;
        if (!interacting(lambda, v)) {
            s.residual = 0.0;
            rho_in = rho_out;
            done = true;
            break;
        }
        s.residual = l1_distance(*s.grid, rho_out.values, rho_in.values) / N;
        if (s.residual < opts.tol) {
            done = true;
            break;
        }
        if (s.residual > prev) theta = std::max(theta * 0.5, 1.0 / 1024.0);
        for (std::size_t i = 0; i < rho_in.values.size(); ++i)
            rho_in.values[i] = (1.0 - theta) * rho_in.values[i] + theta * rho_out.values[i];
        prev = s.residual;
    }
    if (!done) throw ConvergenceError("Hartree iteration did not converge", s.residual, opts.max_iter);

    s.e0 = sp.e0;
    s.e_cut = sp.e_cut;
    s.tail_occupation = tail_estimate(sp, beta, s.mu, s.hbar, omega);
    if (s.tail_occupation > opts.tail_tol * N)
        throw ConvergenceError("spectral cutoff too low: estimated occupation above it is " +
                                   std::to_string(s.tail_occupation),
                               s.tail_occupation, s.iterations);
    s.free_energy = grand_potential(sp, beta, s.mu) + s.mu * N;
    if (interacting(lambda, v)) {
        // exact functional value of the returned operator
        s.free_energy += lambda * (interaction_energy(rho_out, rho_out, op) -
                                   2.0 * interaction_energy(rho_in, rho_out, op)) / N;
    }
    s.rho = std::move(rho_out);
    s.N0 = sp.channels[0].occupations[0];
    double e1 = std::numeric_limits<double>::infinity();
    if (sp.channels[0].count() > 1) e1 = sp.channels[0].energies[1];
    if (sp.channels.size() > 1) e1 = std::min(e1, sp.channels[1].energies[0]);
    s.gap = e1 - s.e0;
    s.channels = std::move(sp.channels);
    if (!opts.keep_vectors)
        for (auto& c : s.channels) {
            c.vectors.clear();
            c.vectors.shrink_to_fit();
        }
    return s;
}

double condensate_fraction(const HartreeState& s) { return s.N0 / s.N; }

double spectral_gap(const HartreeState& s) { return s.gap; }

ExcitedTrace excited_trace(const HartreeState& s) {
    ExcitedTrace t;
    for (const auto& ch : s.channels)
        for (std::size_t n = 0; n < ch.count(); ++n) {
            if (ch.ell == 0 && n == 0) continue;
            const double x = s.beta * (ch.energies[n] - s.mu);
            const double em = std::expm1(x);
            t.trace += (2 * ch.ell + 1) * (2.0 + em) / (em * em);
        }
    t.scaled = t.trace * std::pow(s.beta * s.hbar * s.omega, 3);
    return t;
}

double dual_objective(const RadialDensity& eta, const HartreeState& s) {
    if (!eta.grid || eta.grid->size() != s.grid->size() || eta.grid->r_max != s.grid->r_max)
        throw PreconditionError("dual_objective: eta must live on the Hartree grid");
    const ConvolutionOperator op(s.potential, s.grid);
    RadialOperator H{s.grid.get(), s.hbar, s.omega, mean_field(op, eta, s.lambda, s.N, true)};
    const double w = 1.0 / std::expm1(s.beta * (s.e_cut - s.e0));
    Spectrum sp = diagonalize(H, s.beta, w, false, true);
    double mu = 0.0;
    try {
        mu = solve_mu(sp, s.beta, s.N);
    } catch (const ConvergenceError&) {
        throw PreconditionError("dual_objective: no chemical potential gives particle number N");
    }
    double val = grand_potential(sp, s.beta, mu) + mu * s.N;
    if (s.lambda != 0.0 && !s.potential.is_zero()) val -= s.lambda * interaction_energy(eta, eta, op) / s.N;
    return val;
}

HusimiSlice husimi_slice(const HartreeState& s, const HusimiRays& rays, int n_samples) {
    if (s.channels.empty() || s.channels[0].vectors.empty())
        throw PreconditionError("husimi_slice: state was solved without eigenvectors");
    HusimiSlice out;
    out.phi = rays.phi;
    const double smax = rays.s_max > 0 ? rays.s_max : std::sqrt(25.0 / s.beta);
    const auto rule = quad::gauss_legendre(n_samples);
    const double cp = std::cos(rays.phi), sq = 2.0 / s.omega * std::sin(rays.phi);
    for (int kind = 0; kind < 2; ++kind) {
        if (kind == 0 && !rays.parallel) continue;
        if (kind == 1 && !rays.perpendicular) continue;
        for (int j = 0; j < n_samples; ++j) {
            HusimiSample smp;
            smp.ray = kind == 0 ? RayKind::Parallel : RayKind::Perpendicular;
            smp.s = 0.5 * smax * (rule.x[j] + 1.0);
            smp.q = {0.0, 0.0, sq * smp.s};
            if (kind == 0) smp.p = {0.0, 0.0, cp * smp.s};
            else smp.p = {cp * smp.s, 0.0, 0.0};
            out.samples.push_back(smp);
            out.weights.push_back(0.5 * smax * rule.w[j]);
        }
    }
    kernels::parallel_for(static_cast<long>(out.samples.size()), [&](long i) {
        auto& smp = out.samples[i];
        smp.value = husimi::husimi_value(s.channels, *s.grid, s.hbar, smp.p, smp.q, true);
    });
    return out;
}

DistanceReport compare_to_semiclassical(const HartreeState& h, const SCState& sc, int n_samples) {
    auto close = [](double a, double b) { return std::abs(a - b) <= 1e-10 * std::max(std::abs(a), std::abs(b)); };
    if (!close(h.beta, sc.beta) || !close(h.omega, sc.omega) || !(close(h.lambda, sc.lambda) || h.lambda == sc.lambda))
        throw PreconditionError("compare_to_semiclassical: states have different (beta, omega, lambda)");
    DistanceReport rep;
    rep.condensate_error = std::abs(h.N0 / h.N - sc.g);
    rep.slice = husimi_slice(h, {}, n_samples);
    const RadialDensity rho = sc.total_density();
    const ConvolutionOperator op(h.potential, rho.grid);
    const bool inter = sc.lambda != 0.0 && !h.potential.is_zero();
    const double c0 = inter ? op.at(rho, 0.0) : 0.0;
    double num[2] = {0, 0}, den[2] = {0, 0};
    rep.gamma_sc.resize(rep.slice.samples.size());
    for (std::size_t i = 0; i < rep.slice.samples.size(); ++i) {
        const auto& smp = rep.slice.samples[i];
        double p2 = 0, q2 = 0;
        for (int j = 0; j < 3; ++j) {
            p2 += smp.p[j] * smp.p[j];
            q2 += smp.q[j] * smp.q[j];
        }
        double W = 0.25 * sc.omega * sc.omega * q2 - sc.mu;
        if (inter) W += sc.lambda * (op.at(rho, std::sqrt(q2)) - c0);
        const double g = 1.0 / std::expm1(sc.beta * (p2 + W));
        rep.gamma_sc[i] = g;
        const int k = smp.ray == RayKind::Parallel ? 0 : 1;
        const double w = rep.slice.weights[i] * std::pow(smp.s, 5);
        num[k] += w * std::abs(smp.value - g);
        den[k] += w * g;
    }
    rep.husimi_parallel = den[0] > 0 ? num[0] / den[0] : 0.0;
    rep.husimi_perpendicular = den[1] > 0 ? num[1] / den[1] : 0.0;
    const int nr = (den[0] > 0) + (den[1] > 0);
    rep.husimi_discrepancy = nr ? (rep.husimi_parallel + rep.husimi_perpendicular) / nr : 0.0;
    return rep;
}

}  // namespace bosegas
