#include "bosegas/critical_temperature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "bosegas/errors.hpp"
#include "bosegas/ideal_gas.hpp"
#include "bosegas/kernels.hpp"
#include "bosegas/special_functions.hpp"

namespace bosegas {

namespace {

constexpr double kPi = std::numbers::pi;

double l1_distance(const RadialGrid& g, const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) s += g.w[i] * g.r[i] * g.r[i] * std::abs(a[i] - b[i]);
    return 4.0 * kPi * s;
}

double thermal_mass_at(const RadialGrid& g, const std::vector<double>& w, double beta) {
    double s = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) {
        if (g.w[i] == 0.0) continue;
        s += g.w[i] * g.r[i] * g.r[i] * special::eta(beta * w[i]);
    }
    return 4.0 * kPi * std::pow(beta, -1.5) * s;
}

RadialDensity ideal_critical_density(double omega, const GridPtr& grid) {
    const double b0 = beta_critical(omega);
    RadialDensity d{grid, std::vector<double>(grid->size()), 0.0};
    for (std::size_t i = 0; i < grid->size(); ++i) d.values[i] = ideal_thermal_density(grid->r[i], b0, omega, 0.0);
    return d;
}

bool interacting(double lambda, const Potential& v) { return lambda != 0.0 && !v.is_zero(); }

}  // namespace

std::pair<double, double> tc_bracket(double lambda, double omega, const Potential& v) {
    const double b0 = beta_critical(omega);
    const double cl = 2.0 * v.hessian_sup / (omega * omega) * lambda;
    if (!(cl < 1.0)) throw DomainError("tc_bracket: lambda * hessian_sup must stay below omega^2/2");
    return {b0 / std::sqrt(1.0 + cl), b0 / std::sqrt(1.0 - cl)};
}

GridPtr tc_grid(double lambda, double omega, const Potential& v, int n_points) {
    const double b0 = beta_critical(omega);
    if (!interacting(lambda, v)) return quad::make_radial_grid(trap_rmax(b0, omega), n_points);
    const double lo = std::max(0.5 * b0, tc_bracket(lambda, omega, v).first);
    return quad::make_radial_grid(trap_rmax(lo, omega, curvature_constant(v, lambda, omega)), n_points);
}

TStep apply_T(const RadialDensity& rho, double lambda, double omega, const ConvolutionOperator& op,
              const TcOptions& opts) {
    if (rho.point_mass != 0.0) throw PreconditionError("apply_T: density must not carry a point mass");
    if (std::abs(rho.thermal_mass() - 1.0) > 1e-6) throw PreconditionError("apply_T: density must have unit mass");
    const RadialGrid& g = *rho.grid;
    const double b0 = beta_critical(omega);
    TStep out;
    if (!interacting(lambda, op.potential())) {
        out.beta = b0;
        out.rho = ideal_critical_density(omega, rho.grid);
        return out;
    }
    const auto conv = op.apply(rho, opts.parallel);
    std::vector<double> w(g.size());
    for (std::size_t i = 0; i < g.size(); ++i)
        w[i] = 0.25 * omega * omega * g.r[i] * g.r[i] + lambda * (conv[i] - conv[0]);

    const auto br = tc_bracket(lambda, omega, op.potential());
    // the bracket is exact for the continuum problem; leave room for quadrature error
    double lo = std::max(0.5 * b0, br.first * (1.0 - 1e-9));
    double hi = std::min(2.0 * b0, br.second * (1.0 + 1e-9));
    if (thermal_mass_at(g, w, lo) < 1.0 || thermal_mass_at(g, w, hi) > 1.0)
        throw ConvergenceError("apply_T: beta bisection bracket failure (invalid potential or lambda too large)",
                               std::numeric_limits<double>::quiet_NaN(), 0);
    while (hi - lo > opts.beta_rel_tol * lo) {
        const double mid = 0.5 * (lo + hi);
        if (thermal_mass_at(g, w, mid) > 1.0) lo = mid;
        else hi = mid;
    }
    out.beta = 0.5 * (lo + hi);
    out.rho = {rho.grid, std::vector<double>(g.size()), 0.0};
    const double pref = std::pow(out.beta, -1.5);
    for (std::size_t i = 0; i < g.size(); ++i) out.rho.values[i] = pref * special::eta(out.beta * w[i]);
    return out;
}

TStep apply_T(const RadialDensity& rho, double lambda, double omega, const Potential& v, const TcOptions& opts) {
    const ConvolutionOperator op(interacting(lambda, v) ? v : make_zero_potential(), rho.grid);
    return apply_T(rho, lambda, omega, op, opts);
}

TcResult find_tc(double lambda, double omega, const Potential& v, const TcOptions& opts) {
    if (!(lambda >= 0)) throw DomainError("find_tc: lambda must be nonnegative");
    if (!(omega > 0)) throw DomainError("find_tc: omega must be positive");
    require_admissible(v, omega, lambda);
    const GridPtr grid = opts.init ? opts.init->grid : tc_grid(lambda, omega, v, opts.n_points);
    const ConvolutionOperator op(interacting(lambda, v) ? v : make_zero_potential(), grid);

    TcResult res;
    res.lambda = lambda;
    res.bracket = interacting(lambda, v) ? tc_bracket(lambda, omega, v)
                                         : std::pair{beta_critical(omega), beta_critical(omega)};
    RadialDensity rho = opts.init ? *opts.init : ideal_critical_density(omega, grid);
    double prev = std::numeric_limits<double>::infinity();
    int rising = 0;
    for (int it = 1; it <= opts.max_iter; ++it) {
        TStep step = apply_T(rho, lambda, omega, op, opts);
        const double r = l1_distance(*grid, step.rho.values, rho.values);
        rho = std::move(step.rho);
        res.beta_c = step.beta;
        res.residual = r;
        res.iterations = it;
        if (r < opts.tol) {
            res.rho_c = std::move(rho);
            return res;
        }
        rising = r > prev ? rising + 1 : 0;
        if (rising >= opts.divergence_window)
            throw ConvergenceError("find_tc: residual grew for " + std::to_string(rising) +
                                       " consecutive iterations (lambda outside the contraction regime)",
                                   r, it);
        prev = r;
    }
    throw ConvergenceError("find_tc: no convergence", res.residual, opts.max_iter);
}

double t_lipschitz_ratio(const RadialDensity& rho1, const RadialDensity& rho2, double lambda, double omega,
                         const ConvolutionOperator& op) {
    const double d = l1_distance(*rho1.grid, rho1.values, rho2.values);
    if (d == 0.0) throw PreconditionError("t_lipschitz_ratio: densities coincide");
    const TStep a = apply_T(rho1, lambda, omega, op);
    const TStep b = apply_T(rho2, lambda, omega, op);
    return l1_distance(*rho1.grid, a.rho.values, b.rho.values) / d;
}

RadialDensity random_unit_density(const GridPtr& grid, std::mt19937_64& rng, double width_scale) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const int k = 1 + static_cast<int>(u(rng) * 4.0);
    const double R = grid->r_max;
    RadialDensity d{grid, std::vector<double>(grid->size(), 0.0), 0.0};
    for (int j = 0; j < k; ++j) {
        const double c = 0.1 + u(rng);
        const double m = 0.3 * R * u(rng) * width_scale;
        const double s = (0.05 + 0.15 * u(rng)) * R * width_scale;
        for (std::size_t i = 0; i < grid->size(); ++i) {
            const double x = (grid->r[i] - m) / s;
            d.values[i] += c * std::exp(-x * x);
        }
    }
    const double mass = d.thermal_mass();
    for (auto& x : d.values) x /= mass;
    return d;
}

std::vector<double> xi_potential_gap(double omega, const Potential& v, const GridPtr& grid) {
    const RadialDensity rho0 = ideal_critical_density(omega, grid);
    const ConvolutionOperator op(v, grid);
    const auto conv = op.apply(rho0);
    const RadialGrid& g = *grid;
    std::vector<double> lap(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) lap[i] = rho0.values[i] * v.profile->laplacian(g.r[i]);
    // (v*rho)(r) = (v*rho)(0) + r^2/6 \int rho Lap v + O(r^4)
    const double c2 = g.integrate_3d(lap) / 6.0;
    std::vector<double> gap(g.size());
    bool near = true;
    for (std::size_t i = 0; i < g.size(); ++i) {
        const double direct = conv[0] - conv[i];
        const double series = -c2 * g.r[i] * g.r[i];
        if (near && std::abs(direct - series) > 1e-10) near = false;
        gap[i] = near ? series : direct;
    }
    return gap;
}

double xi_coefficient(double omega, const Potential& v, int n_points) {
    if (!(omega > 0)) throw DomainError("xi_coefficient: omega must be positive");
    if (const ValidationReport rep = validate_assumption(v, omega); !rep.ok())
        throw ValidationError("xi_coefficient: potential fails the interaction assumptions:\n" + rep.summary());
    const double b0 = beta_critical(omega);
    const GridPtr grid = quad::make_radial_grid(trap_rmax(b0, omega), n_points);
    const auto gap = xi_potential_gap(omega, v, grid);
    const RadialGrid& g = *grid;
    double s = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) {
        if (g.w[i] == 0.0) continue;
        const double r = g.r[i];
        s += g.w[i] * r * r * special::eta_prime(0.25 * b0 * omega * omega * r * r) * gap[i];
    }
    return -4.0 * kPi * s / (3.0 * std::sqrt(b0));
}

SlopeReport tc_slope_check(double omega, const Potential& v, const std::vector<double>& lambdas,
                           const TcOptions& opts) {
    if (lambdas.empty()) throw PreconditionError("tc_slope_check: empty lambda grid");
    SlopeReport rep;
    rep.lambdas = lambdas;
    rep.beta0 = beta_critical(omega);
    const std::size_t n = lambdas.size();
    rep.beta_c.assign(n, 0.0);
    rep.slopes.assign(n, 0.0);
    for (double l : lambdas)
        if (!(l > 0)) throw PreconditionError("tc_slope_check: lambdas must be positive");
    std::vector<std::exception_ptr> errors(n);
    TcOptions inner = opts;
    inner.parallel = false;
    kernels::parallel_for(
        static_cast<long>(n),
        [&](long i) {
            try {
                rep.beta_c[i] = find_tc(lambdas[i], omega, v, inner).beta_c;
            } catch (...) {
                errors[i] = std::current_exception();
            }
        },
        opts.parallel);
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
    for (std::size_t i = 0; i < n; ++i) rep.slopes[i] = (rep.beta_c[i] / rep.beta0 - 1.0) / lambdas[i];
    // Neville's scheme evaluated at lambda = 0
    std::vector<double> p = rep.slopes;
    for (std::size_t m = 1; m < n; ++m)
        for (std::size_t i = 0; i + m < n; ++i)
            p[i] = (lambdas[i + m] * p[i] - lambdas[i] * p[i + 1]) / (lambdas[i + m] - lambdas[i]);
    rep.extrapolated = p[0];
    rep.xi = xi_coefficient(omega, v);
    rep.relative_deviation = std::abs(rep.extrapolated - rep.xi) / std::abs(rep.xi);
    return rep;
}

}  // namespace bosegas
