#pragma once

// Independent reference computations used by the tests. They share no code with the
// library: quadrature comes from Boost.Math, sums are written out directly.

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/special_functions/zeta.hpp>

#include <cmath>
#include <numbers>
#include <vector>

namespace oracle {

constexpr double pi = std::numbers::pi;

inline double gk(auto f, double a, double b) {
    double err = 0;
    return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, a, b, 25, 1e-13, &err);
}

// (2pi)^{-3} \int dp 1/(e^{p^2 + t} - 1) as a radial p-integral.
inline double eta_quadrature(double t) {
    auto f = [t](double p) { return 4 * pi * p * p / std::expm1(p * p + t); };
    const double pmax = std::sqrt(t + 60.0);
    double lo = 0;
    double sum = 0;
    // split near the origin where the integrand at t = 0 tends to a constant
    for (double hi : {0.25, 1.0, 3.0, pmax}) {
        sum += gk(f, lo, hi);
        lo = hi;
    }
    return sum / std::pow(2 * pi, 3);
}

// (2pi)^{-3} \int\int dp dx 1/(e^{beta(p^2 + omega^2 x^2/4 - mu)} - 1) by nested radial quadrature.
inline double ideal_mass_quadrature(double beta, double omega, double mu) {
    const double rmax = std::sqrt(4 * (60 / beta - mu) / (omega * omega));
    auto inner = [&](double r) {
        const double w = omega * omega * r * r / 4 - mu;
        auto f = [&](double p) { return 4 * pi * p * p / std::expm1(beta * (p * p + w)); };
        const double pm = std::sqrt(60 / beta);
        return gk(f, 0, 0.3 * pm) + gk(f, 0.3 * pm, pm);
    };
    auto outer = [&](double r) { return 4 * pi * r * r * inner(r); };
    return (gk(outer, 0, 0.3 * rmax) + gk(outer, 0.3 * rmax, rmax)) / std::pow(2 * pi, 3);
}

// beta^{-1} (2pi)^{-3} \int\int ln(1 - e^{-beta(p^2 + omega^2 x^2/4 - mu)}) + mu
inline double ideal_free_energy_quadrature(double beta, double omega, double mu) {
    const double rmax = std::sqrt(4 * (60 / beta - mu) / (omega * omega));
    auto inner = [&](double r) {
        const double w = omega * omega * r * r / 4 - mu;
        auto f = [&](double p) { return 4 * pi * p * p * std::log1p(-std::exp(-beta * (p * p + w))); };
        const double pm = std::sqrt(60 / beta);
        boost::math::quadrature::tanh_sinh<double> ts;
        return ts.integrate(f, 0.0, pm, 1e-13);
    };
    auto outer = [&](double r) { return 4 * pi * r * r * inner(r); };
    return (gk(outer, 0, 0.3 * rmax) + gk(outer, 0.3 * rmax, rmax)) / (beta * std::pow(2 * pi, 3)) + mu;
}

// Li_s(z) by direct partial sum.
inline double polylog_partial_sum(double s, double z, long terms) {
    double sum = 0, zk = 1;
    for (long k = 1; k <= terms; ++k) {
        zk *= z;
        if (zk == 0) break;
        sum += zk * std::pow(double(k), -s);
    }
    return sum;
}

// Finite-N ideal Bose gas in h = -hbar^2 Laplacian + omega^2 x^2/4, levels hbar omega (n + 3/2)
// with degeneracy (n+1)(n+2)/2. Returns N0/N and the Husimi-ray discrepancy of the excited part
// against 1/(e^{beta s^2} - 1), where the coherent-state Husimi function of shell n is
// Poisson(n; s^2/(hbar omega)).
struct FiniteNIdeal {
    double n0_fraction = 0;
    double husimi = 0;
    double mu = 0;
};

inline FiniteNIdeal finite_n_ideal(double N, double beta, double omega, int n_samples = 48) {
    const double hbar = std::cbrt(1.0 / N), hw = hbar * omega;
    const int shells = 4000;
    const double e0 = 1.5 * hw;
    auto count = [&](double y) {  // mu = e0 - e^y / beta
        const double mu = e0 - std::exp(y) / beta;
        double s = 0;
        for (int n = 0; n < shells; ++n) {
            const double x = beta * (hw * (n + 1.5) - mu);
            if (x > 700) break;
            s += 0.5 * (n + 1.0) * (n + 2.0) / std::expm1(x);
        }
        return s - N;
    };
    double lo = -std::log(N) - 5, hi = 5;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        (count(mid) > 0 ? lo : hi) = mid;
    }
    const double mu = e0 - std::exp(0.5 * (lo + hi)) / beta;
    FiniteNIdeal out;
    out.mu = mu;
    out.n0_fraction = 1.0 / std::expm1(beta * (e0 - mu)) / N;
    // Gauss-Legendre nodes by Newton on P_n
    std::vector<double> x(n_samples), w(n_samples);
    for (int i = 0; i < n_samples; ++i) {
        double z = std::cos(pi * (i + 0.75) / (n_samples + 0.5));
        for (int it = 0; it < 100; ++it) {
            double p0 = 1, p1 = z;
            for (int k = 2; k <= n_samples; ++k) {
                const double p2 = ((2 * k - 1) * z * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            const double dp = n_samples * (z * p1 - p0) / (z * z - 1);
            const double dz = p1 / dp;
            z -= dz;
            if (std::abs(dz) < 1e-16) {
                w[i] = 2 / ((1 - z * z) * dp * dp);
                break;
            }
            w[i] = 2 / ((1 - z * z) * dp * dp);
        }
        x[i] = z;
    }
    const double smax = std::sqrt(25 / beta);
    double num = 0, den = 0;
    for (int i = 0; i < n_samples; ++i) {
        const double s = 0.5 * smax * (x[i] + 1), ws = 0.5 * smax * w[i];
        const double a = s * s / hw;
        double m = 0;
        for (int n = 1; n < shells; ++n) {
            const double occ_arg = beta * (hw * (n + 1.5) - mu);
            if (occ_arg > 700) break;
            m += std::exp(-a + n * std::log(a) - std::lgamma(n + 1.0)) / std::expm1(occ_arg);
        }
        const double g = 1 / std::expm1(beta * s * s);
        num += ws * std::pow(s, 5) * std::abs(m - g);
        den += ws * std::pow(s, 5) * g;
    }
    out.husimi = num / den;
    return out;
}

// Mean-field shift by direct 2D (p, r) quadrature for v(r) = a exp(-r^2/(2 sigma^2)):
//   Xi = beta0 (4pi)^2/(24 pi^3) \int r^2 dr \int p^2 dp [e^{bE}/(e^{bE}-1)^2] (v*rho0(0) - v*rho0(r))
// with E = p^2 + omega^2 r^2/4 and rho0 the ideal critical density written as a Gaussian series.
inline double xi_direct_2d(double omega, double a, double sigma) {
    const double b0 = std::cbrt(boost::math::zeta(3.0)) / omega;
    const long K = 400000;
    std::vector<double> amp(K), var(K);
    for (long k = 1; k <= K; ++k) {
        const double tau2 = 2.0 / (k * b0 * omega * omega);
        const double ck = std::pow(b0, -1.5) * std::pow(4 * pi, -1.5) * std::pow(double(k), -1.5);
        const double s2 = sigma * sigma;
        amp[k - 1] = ck * a * std::pow(2 * pi * s2 * tau2 / (s2 + tau2), 1.5);
        var[k - 1] = s2 + tau2;
    }
    auto gap = [&](double r) {
        double s = 0;
        for (long k = 0; k < K; ++k) s += amp[k] * (-std::expm1(-r * r / (2 * var[k])));
        const double C = amp[K - 1] * (-std::expm1(-r * r / (2 * var[K - 1]))) * std::pow(double(K), 3);
        return s + C / (2 * std::pow(K + 0.5, 2));
    };
    auto inner = [&](double r) {
        const double V = omega * omega * r * r / 4;
        auto f = [&](double p) {
            const double sh = std::sinh(b0 * (p * p + V) / 2);
            return p * p / (4 * sh * sh);
        };
        const double pm = std::sqrt(60 / b0);
        const double split = std::max(std::sqrt(V), 0.05);
        if (split >= pm) return gk(f, 0, pm);
        return gk(f, 0, split) + gk(f, split, pm);
    };
    const double rmax = std::sqrt(160 / (b0 * omega * omega));
    auto outer = [&](double r) { return r * r * inner(r) * gap(r); };
    const double pref = b0 / (24 * pi * pi * pi) * std::pow(4 * pi, 2);
    double sum = 0, lo = 0;
    for (double hi : {0.25 * rmax, 0.5 * rmax, rmax}) {
        sum += boost::math::quadrature::gauss_kronrod<double, 31>::integrate(outer, lo, hi, 0, 0);
        lo = hi;
    }
    return pref * sum;
}

}  // namespace oracle
