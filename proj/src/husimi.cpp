#include "bosegas/husimi.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace bosegas::husimi {

namespace {

using cplx = std::complex<double>;
constexpr double kPi = std::numbers::pi;

// e^{-Re z} i_0(z) and e^{-Re z} i_1(z) for Re z >= 0
void exact_low(cplx z, cplx& i0, cplx& i1) {
    const double a = z.real(), b = z.imag();
    const cplx ep = std::polar(1.0, b);                 // e^{z - Re z}
    const cplx em = std::exp(-2.0 * a) * std::polar(1.0, -b);  // e^{-z - Re z}
    const cplx sh = 0.5 * (ep - em), ch = 0.5 * (ep + em);
    if (std::abs(z) < 0.5) {
        const cplx z2 = z * z;
        const double s = std::exp(-a);
        i0 = s * (1.0 + z2 / 6.0 * (1.0 + z2 / 20.0 * (1.0 + z2 / 42.0 * (1.0 + z2 / 72.0))));
        i1 = s * z / 3.0 * (1.0 + z2 / 10.0 * (1.0 + z2 / 28.0 * (1.0 + z2 / 54.0 * (1.0 + z2 / 88.0))));
        return;
    }
    i0 = sh / z;
    i1 = (z * ch - sh) / (z * z);
}

}  // namespace

void scaled_bessel_i(cplx z, int lmax, cplx* out) {
    const bool flip = z.real() < 0;
    if (flip) z = -z;  // i_l(-z) = (-1)^l i_l(z)
    const double az = std::abs(z);
    if (az < 1e-300) {
        out[0] = 1.0;
        for (int l = 1; l <= lmax; ++l) out[l] = 0.0;
        return;
    }
    cplx i0, i1;
    exact_low(z, i0, i1);
    if (lmax == 0) {
        out[0] = i0;
        return;
    }
    // Miller backward recurrence i_{l-1} = i_{l+1} + (2l+1)/z i_l
    const int start = std::max(lmax, static_cast<int>(az)) + 20 + static_cast<int>(3.0 * std::sqrt(az + lmax));
    cplx fp1 = 0.0, f = 1e-30;
    const cplx zinv = 1.0 / z;
    for (int l = start; l >= 1; --l) {
        const cplx fm1 = fp1 + double(2 * l + 1) * zinv * f;
        fp1 = f;
        f = fm1;
        if (l - 1 <= lmax) out[l - 1] = f;
        if (l <= lmax) out[l] = fp1;
        if (std::abs(f) > 1e200) {
            f *= 1e-200;
            fp1 *= 1e-200;
            for (int j = l - 1; j <= lmax; ++j) out[j] *= 1e-200;
        }
    }
    const cplx scale = std::abs(i0) >= std::abs(i1) ? i0 / out[0] : i1 / out[1];
    for (int l = 0; l <= lmax; ++l) out[l] *= scale;
    if (flip)
        for (int l = 1; l <= lmax; l += 2) out[l] = -out[l];
}

void log_legendre(double tau, int lmax, double* out) {
    out[0] = 0.0;
    if (lmax == 0) return;
    // scaled upward recurrence; every P_l(tau) is positive for tau >= 1
    double pm1 = 1.0, p = tau, logscale = 0.0;
    out[1] = std::log(tau);
    for (int l = 1; l < lmax; ++l) {
        const double pn = ((2 * l + 1) * tau * p - l * pm1) / (l + 1);
        pm1 = p;
        p = pn;
        if (p > 1e150) {
            p *= 1e-150;
            pm1 *= 1e-150;
            logscale += 150.0 * std::numbers::ln10;
        }
        out[l + 1] = std::log(p) + logscale;
    }
}

void mode_overlaps(const std::vector<RadialChannel>& channels, const quad::RadialGrid& grid, double hbar,
                   const special::Vec3& p, const special::Vec3& q, std::vector<std::vector<double>>& values) {
    values.resize(channels.size());
    int lmax = 0;
    for (const auto& c : channels) lmax = std::max(lmax, c.ell);

    // k = (q - i p)/hbar, kappa^2 = k.k (bilinear), tau = |k|^2/|kappa^2|
    cplx kk = 0.0;
    double k2 = 0.0, q2 = 0.0;
    for (int j = 0; j < 3; ++j) {
        const cplx kj(q[j] / hbar, -p[j] / hbar);
        kk += kj * kj;
        k2 += std::norm(kj);
        q2 += q[j] * q[j];
    }
    cplx kappa = std::sqrt(kk);
    if (kappa.real() < 0) kappa = -kappa;
    const double re = kappa.real();
    const double tau = std::abs(kk) > 0 ? std::max(1.0, k2 / std::abs(kk)) : 1.0;
    const bool origin = k2 == 0.0;

    std::vector<double> logp(lmax + 1);
    log_legendre(tau, lmax, logp.data());

    // Gaussian factor e^{-(r - hbar Re kappa)^2/(2 hbar)} restricts the radial sum
    const std::size_t M = grid.size() - 2;
    const double h = grid.r[1] - grid.r[0];
    const double centre = hbar * re;
    const double half = std::sqrt(2.0 * hbar * 60.0);
    const std::size_t lo = std::max<std::size_t>(1, static_cast<std::size_t>(std::max(0.0, (centre - half) / h)));
    const std::size_t hi = std::min<std::size_t>(M, static_cast<std::size_t>((centre + half) / h) + 1);

    const std::size_t nwin = hi >= lo ? hi - lo + 1 : 0;
    std::vector<double> bre((lmax + 1) * nwin), bim((lmax + 1) * nwin);
    std::vector<cplx> buf(lmax + 1);
    for (std::size_t i = lo; i <= hi && nwin; ++i) {
        const double r = grid.r[i];
        const double d = r - centre;
        const double wgt = h * r * std::exp(-0.5 * d * d / hbar);
        scaled_bessel_i(kappa * r, lmax, buf.data());
        for (int l = 0; l <= lmax; ++l) {
            bre[l * nwin + (i - lo)] = wgt * buf[l].real();
            bim[l * nwin + (i - lo)] = wgt * buf[l].imag();
        }
    }
    const double base = -1.5 * std::log(kPi * hbar) - q2 / hbar + hbar * re * re;
    for (std::size_t c = 0; c < channels.size(); ++c) {
        const RadialChannel& ch = channels[c];
        const int l = ch.ell;
        const std::size_t k = ch.count();
        values[c].assign(k, 0.0);
        if (nwin == 0 || (origin && l > 0)) continue;
        const double pref = std::log(4.0 * kPi * (2 * l + 1)) + logp[l] + base;
        const double* br = &bre[l * nwin];
        const double* bi = &bim[l * nwin];
        for (std::size_t n = 0; n < k; ++n) {
            const double* u = &ch.vectors[n * M + (lo - 1)];
            double sr = 0.0, si = 0.0;
            for (std::size_t i = 0; i < nwin; ++i) {
                sr += u[i] * br[i];
                si += u[i] * bi[i];
            }
            const double a2 = sr * sr + si * si;
            values[c][n] = a2 > 0 ? std::exp(pref + std::log(a2)) : 0.0;
        }
    }
}

double husimi_value(const std::vector<RadialChannel>& channels, const quad::RadialGrid& grid, double hbar,
                    const special::Vec3& p, const special::Vec3& q, bool skip_ground) {
    std::vector<std::vector<double>> vals;
    mode_overlaps(channels, grid, hbar, p, q, vals);
    double m = 0.0;
    for (std::size_t c = 0; c < channels.size(); ++c)
        for (std::size_t n = 0; n < vals[c].size(); ++n) {
            if (skip_ground && c == 0 && n == 0 && channels[c].ell == 0) continue;
            m += channels[c].occupations[n] * vals[c][n];
        }
    return m;
}

}  // namespace bosegas::husimi
