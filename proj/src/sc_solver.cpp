#include "bosegas/sc_solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "bosegas/errors.hpp"
#include "bosegas/ideal_gas.hpp"
#include "bosegas/special_functions.hpp"

namespace bosegas {

namespace {

constexpr double kPi = std::numbers::pi;

// thermal mass 4 pi \int r^2 beta^{-3/2} eta(beta W0 - x) dr
double thermal_mass(const RadialGrid& g, const std::vector<double>& w0, double beta, double x) {
    double s = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) {
        if (g.w[i] == 0.0) continue;
        s += g.w[i] * g.r[i] * g.r[i] * special::eta(std::max(beta * w0[i] - x, 0.0));
    }
    return 4.0 * kPi * std::pow(beta, -1.5) * s;
}

double l1_distance(const RadialGrid& g, const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) s += g.w[i] * g.r[i] * g.r[i] * std::abs(a[i] - b[i]);
    return 4.0 * kPi * s;
}

}  // namespace

std::vector<double> PhaseSpacePair::spatial_density() const {
    const std::size_t nr = r_grid->size(), np = p_grid->size();
    std::vector<double> rho(nr, 0.0);
    const double c = 4.0 * kPi * std::pow(2.0 * kPi, -3);
    for (std::size_t i = 0; i < nr; ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < np; ++j) {
            if (p_grid->w[j] == 0.0) continue;
            s += p_grid->w[j] * p_grid->r[j] * p_grid->r[j] * gamma[i * np + j];
        }
        rho[i] = c * s;
    }
    return rho;
}

double PhaseSpacePair::mass() const { return r_grid->integrate_3d(spatial_density()) + g; }

GridPtr default_p_grid(double beta, int n_points) {
    return quad::make_radial_grid(std::sqrt(45.0 / beta), n_points);
}

SCMapResult sc_map(const RadialDensity& input, double beta, double omega, double lambda,
                   const ConvolutionOperator& op, double tie_tol, bool parallel) {
    const RadialGrid& g = *input.grid;
    const std::size_t n = g.size();
    SCMapResult out;
    std::vector<double> w0(n);
    if (lambda != 0.0) {
        const auto conv = op.apply(input, parallel);
        out.conv0 = conv[0];
        for (std::size_t i = 0; i < n; ++i)
            w0[i] = 0.25 * omega * omega * g.r[i] * g.r[i] + lambda * (conv[i] - conv[0]);
    } else {
        for (std::size_t i = 0; i < n; ++i) w0[i] = 0.25 * omega * omega * g.r[i] * g.r[i];
    }
    const double m0 = thermal_mass(g, w0, beta, 0.0);
    const double deficit = 1.0 - m0;
    double x = 0.0;  // beta mu
    if (deficit > tie_tol) {
        out.g = deficit;
    } else if (deficit < -tie_tol) {
        double lo = -50.0, hi = 0.0;
        if (thermal_mass(g, w0, beta, lo) > 1.0)
            throw ConvergenceError("chemical potential below the bracket beta*mu >= -50", deficit, 0);
        for (int it = 0; it < 200 && hi - lo > 1e-14; ++it) {
            const double mid = 0.5 * (lo + hi);
            if (thermal_mass(g, w0, beta, mid) < 1.0) lo = mid;
            else hi = mid;
        }
        x = 0.5 * (lo + hi);
    }
    out.mu = x / beta;
    out.rho.resize(n);
    out.w_eff.resize(n);
    const double pref = std::pow(beta, -1.5);
    for (std::size_t i = 0; i < n; ++i) {
        out.w_eff[i] = w0[i] - out.mu;
        out.rho[i] = pref * special::eta(std::max(beta * w0[i] - x, 0.0));
    }
    return out;
}

SCState solve_selfconsistent(double beta, double omega, const Potential& v, double lambda, const SCOptions& opts) {
    if (!(beta > 0 && omega > 0)) throw DomainError("solve_selfconsistent: beta and omega must be positive");
    require_admissible(v, omega, lambda);
    const Potential vv = lambda == 0.0 ? make_zero_potential() : v;
    const double c = curvature_constant(vv, lambda, omega);
    const GridPtr grid = quad::make_radial_grid(trap_rmax(beta, omega, c), opts.n_points);
    const ConvolutionOperator op(vv, grid);

    RadialDensity cur;
    cur.grid = grid;
    if (opts.init == SCOptions::Init::Ideal) {
        const IdealState id = ideal_state(beta, omega, grid);
        cur.values = id.rho0.values;
        cur.point_mass = id.g0;
    } else {
        const double R = opts.ball_radius > 0 ? opts.ball_radius : grid->r_max / 3.0;
        cur.values.assign(grid->size(), 0.0);
        for (std::size_t i = 0; i < grid->size(); ++i)
            if (grid->r[i] <= R) cur.values[i] = 1.0;
        const double m = cur.thermal_mass();
        for (auto& x : cur.values) x /= m;
        cur.point_mass = 0.0;
    }

    double theta = opts.theta;
    double prev = std::numeric_limits<double>::infinity();
    double res = prev;
    SCMapResult m;
    int it = 0;
    bool done = false;
    for (it = 1; it <= opts.max_iter; ++it) {
        m = sc_map(cur, beta, omega, lambda, op, opts.tie_tol, opts.parallel);
        res = l1_distance(*grid, m.rho, cur.values) + std::abs(m.g - cur.point_mass);
        if (res < opts.tol) {
            done = true;
            break;
        }
        if (res > prev) theta = std::max(theta * 0.5, 1.0 / 1024.0);
        for (std::size_t i = 0; i < grid->size(); ++i) cur.values[i] = (1.0 - theta) * cur.values[i] + theta * m.rho[i];
        cur.point_mass = (1.0 - theta) * cur.point_mass + theta * m.g;
        prev = res;
    }
    if (!done) throw ConvergenceError("self-consistent iteration did not converge", res, opts.max_iter);

    SCState s;
    s.beta = beta;
    s.omega = omega;
    s.lambda = lambda;
    s.rho_thermal = {grid, m.rho, 0.0};
    s.g = m.g;
    s.mu = m.mu;
    s.w_eff = m.w_eff;
    s.conv0 = m.conv0;
    s.residual = res;
    s.iterations = it;
    {
        const SCMapResult again = sc_map(s.total_density(), beta, omega, lambda, op, opts.tie_tol, opts.parallel);
        s.el_residual = l1_distance(*grid, again.rho, s.rho_thermal.values) + std::abs(again.g - s.g);
    }
    s.free_energy = free_energy_of_state(s, vv);
    return s;
}

double free_energy_of_state(const SCState& s, const Potential& v) {
    const RadialGrid& g = *s.rho_thermal.grid;
    double li = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) {
        if (g.w[i] == 0.0) continue;
        li += g.w[i] * g.r[i] * g.r[i] *
              special::polylog_exp(special::PolylogOrder::FiveHalves, std::max(s.beta * s.w_eff[i], 0.0));
    }
    double F = -std::pow(4.0 * kPi * s.beta, -1.5) * 4.0 * kPi * li / s.beta + s.mu;
    if (s.lambda != 0.0 && !v.is_zero()) {
        const ConvolutionOperator op(v, s.rho_thermal.grid);
        const RadialDensity rho = s.total_density();
        const double conv0 = op.apply(rho)[0];
        F += s.lambda * conv0 - s.lambda * interaction_energy(rho, rho, op);
    }
    return F;
}

PhaseSpacePair reconstruct_pair(const SCState& s, GridPtr p_grid) {
    PhaseSpacePair pair;
    pair.p_grid = p_grid ? p_grid : default_p_grid(s.beta);
    pair.r_grid = s.rho_thermal.grid;
    pair.g = s.g;
    const std::size_t nr = pair.r_grid->size(), np = pair.p_grid->size();
    pair.gamma.assign(nr * np, 0.0);
    for (std::size_t i = 0; i < nr; ++i) {
        for (std::size_t j = 0; j < np; ++j) {
            const double p = pair.p_grid->r[j];
            const double e = s.beta * (p * p + s.w_eff[i]);
            // the zero-energy corner carries zero quadrature weight
            pair.gamma[i * np + j] = e > 0 ? 1.0 / std::expm1(e) : 0.0;
        }
    }
    return pair;
}

double evaluate_functional(const PhaseSpacePair& pair, double beta, double omega, const Potential& v,
                           double lambda, double admissibility_tol) {
    const RadialGrid& rg = *pair.r_grid;
    const RadialGrid& pg = *pair.p_grid;
    const std::size_t nr = rg.size(), np = pg.size();
    if (pair.gamma.size() != nr * np) throw PreconditionError("evaluate_functional: gamma has the wrong shape");
    if (!(pair.g >= 0.0 && pair.g <= 1.0)) throw PreconditionError("evaluate_functional: g must lie in [0,1]");
    for (double x : pair.gamma)
        if (!(x >= 0.0) || !std::isfinite(x)) throw PreconditionError("evaluate_functional: gamma must be finite and >= 0");
    const std::vector<double> rho = pair.spatial_density();
    const double mass = rg.integrate_3d(rho) + pair.g;
    if (std::abs(mass - 1.0) > admissibility_tol)
        throw PreconditionError("evaluate_functional: pair is not normalized (mass " + std::to_string(mass) + ")");
    double sum = 0.0;
    for (std::size_t i = 0; i < nr; ++i) {
        if (rg.w[i] == 0.0) continue;
        const double r = rg.r[i];
        const double vr = 0.25 * omega * omega * r * r;
        double row = 0.0;
        for (std::size_t j = 0; j < np; ++j) {
            if (pg.w[j] == 0.0) continue;
            const double p = pg.r[j];
            const double gm = pair.gamma[i * np + j];
            row += pg.w[j] * p * p * ((p * p + vr) * gm + special::bose_entropy_f(gm) / beta);
        }
        sum += rg.w[i] * r * r * row;
    }
    double F = sum * 16.0 * kPi * kPi * std::pow(2.0 * kPi, -3);
    if (lambda != 0.0 && !v.is_zero()) {
        const RadialDensity d{pair.r_grid, rho, pair.g};
        F += lambda * interaction_energy(d, d, v);
    }
    return F;
}

double sc_relative_entropy_to_state(const PhaseSpacePair& pair, const SCState& s) {
    const RadialGrid& rg = *pair.r_grid;
    const RadialGrid& pg = *pair.p_grid;
    if (rg.r != s.rho_thermal.grid->r) throw PreconditionError("relative entropy: pair and state use different r-grids");
    const std::size_t nr = rg.size(), np = pg.size();
    double sum = 0.0;
    for (std::size_t i = 0; i < nr; ++i) {
        if (rg.w[i] == 0.0) continue;
        double row = 0.0;
        for (std::size_t j = 0; j < np; ++j) {
            if (pg.w[j] == 0.0) continue;
            const double p = pg.r[j];
            const double e = s.beta * (p * p + s.w_eff[i]);
            const double gsc = 1.0 / std::expm1(e);
            const double m = pair.gamma[i * np + j];
            // f'(gamma^sc) = -beta (p^2 + W)
            const double b = special::bose_entropy_f(m) - special::bose_entropy_f(gsc) + e * (m - gsc);
            row += pg.w[j] * p * p * b;
        }
        sum += rg.w[i] * rg.r[i] * rg.r[i] * row;
    }
    return std::max(0.0, sum * 16.0 * kPi * kPi * std::pow(2.0 * kPi, -3));
}

}  // namespace bosegas
