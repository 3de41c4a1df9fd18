#include "bosegas/inequality_lab.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>

#include "bosegas/errors.hpp"
#include "bosegas/kernels.hpp"
#include "bosegas/quadrature.hpp"

namespace bosegas::lab {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();

// h_0..h_nmax at y = x/xi, normalized in L^2(dx)
void hermite_functions(double x, double xi, int nmax, double* out) {
    const double y = x / xi;
    out[0] = std::pow(kPi, -0.25) / std::sqrt(xi) * std::exp(-0.5 * y * y);
    if (nmax >= 1) out[1] = std::sqrt(2.0) * y * out[0];
    for (int n = 1; n < nmax; ++n)
        out[n + 1] = std::sqrt(2.0 / (n + 1)) * y * out[n] - std::sqrt(double(n) / (n + 1)) * out[n - 1];
}

// composite Gauss-Legendre nodes on [a, b]
void composite_rule(double a, double b, int panels, int order, std::vector<double>& x, std::vector<double>& w) {
    const auto r = quad::gauss_legendre(order);
    x.clear();
    w.clear();
    const double len = (b - a) / panels;
    for (int k = 0; k < panels; ++k) {
        const double lo = a + k * len;
        for (int j = 0; j < order; ++j) {
            x.push_back(lo + 0.5 * len * (r.x[j] + 1.0));
            w.push_back(0.5 * len * r.w[j]);
        }
    }
}

// nodes on [0, hi] with panel edges at the given break points
void broken_rule(double hi, std::vector<double> breaks, int panels_per_piece, int order, std::vector<double>& x,
                 std::vector<double>& w) {
    breaks.erase(std::remove_if(breaks.begin(), breaks.end(), [&](double b) { return !(b > 0 && b < hi); }),
                 breaks.end());
    std::sort(breaks.begin(), breaks.end());
    breaks.insert(breaks.begin(), 0.0);
    breaks.push_back(hi);
    x.clear();
    w.clear();
    std::vector<double> px, pw;
    for (std::size_t k = 0; k + 1 < breaks.size(); ++k) {
        composite_rule(breaks[k], breaks[k + 1], panels_per_piece, order, px, pw);
        x.insert(x.end(), px.begin(), px.end());
        w.insert(w.end(), pw.begin(), pw.end());
    }
}

// \int_0^hi g(s) ds split at the break points
double integrate_broken(const std::function<double(double)>& g, double hi, std::vector<double> breaks) {
    breaks.erase(std::remove_if(breaks.begin(), breaks.end(), [&](double b) { return !(b > 0 && b < hi); }),
                 breaks.end());
    std::sort(breaks.begin(), breaks.end());
    breaks.insert(breaks.begin(), 0.0);
    breaks.push_back(hi);
    double s = 0.0;
    for (std::size_t k = 0; k + 1 < breaks.size(); ++k) s += quad::integrate(g, breaks[k], breaks[k + 1], 1e-15, 1e-13);
    return s;
}

// log of the Poisson weight e^{-s} s^n / n!
double log_poisson(double s, int n) { return -s + n * std::log(s) - std::lgamma(n + 1.0); }

double ln1p_minus(double t) {
    if (std::abs(t) < 1e-3) return t * t * (-0.5 + t * (1.0 / 3.0 + t * (-0.25 + t * 0.2)));
    return std::log1p(t) - t;
}

}  // namespace

void HermiteProbe::normalize() {
    double n2 = 0.0;
    for (double c : coeffs) n2 += c * c;
    if (!(n2 > 0)) throw PreconditionError("HermiteProbe: zero probe");
    for (double& c : coeffs) c /= std::sqrt(n2);
}

HermiteProbe window_probe(double hbar) {
    HermiteProbe p{std::sqrt(hbar), {{0, 0, 0}}, {1.0}};
    return p;
}

HermiteProbe oscillator_probe(double hbar, double omega, std::array<int, 3> n) {
    HermiteProbe p{std::sqrt(2.0 * hbar / omega), {n}, {1.0}};
    return p;
}

HermiteProbe random_oscillator_probe(double hbar, double omega, int n_modes, std::mt19937_64& rng, int max_level) {
    HermiteProbe p;
    p.xi = std::sqrt(2.0 * hbar / omega);
    std::uniform_int_distribution<int> lvl(0, max_level);
    std::normal_distribution<double> g;
    while (static_cast<int>(p.modes.size()) < n_modes) {
        const std::array<int, 3> m{lvl(rng), lvl(rng), lvl(rng)};
        if (std::find(p.modes.begin(), p.modes.end(), m) != p.modes.end()) continue;
        p.modes.push_back(m);
        p.coeffs.push_back(g(rng));
    }
    p.normalize();
    return p;
}

double coherent_resolution_check(double hbar, const HermiteProbe& probe, int n_quad) {
    if (!(hbar > 0)) throw DomainError("coherent_resolution_check: hbar must be positive");
    if (probe.modes.size() != probe.coeffs.size() || probe.modes.empty())
        throw PreconditionError("coherent_resolution_check: malformed probe");
    int nmax = 0;
    for (const auto& m : probe.modes) nmax = std::max({nmax, m[0], m[1], m[2]});
    const double xi = probe.xi, sh = std::sqrt(hbar);
    const double ext = std::sqrt(2.0 * nmax + 1.0) + 9.0;
    const double X = xi * ext;
    const double Q = X + 9.0 * sh;
    const double P = hbar * ext / xi + 9.0 * sh;
    const int order = 20, panels = std::max(1, n_quad / order);
    std::vector<double> xs, xw, qs, qw, ps, pw;
    // the x integrand oscillates with frequency up to P/hbar; keep about two periods per panel
    const double periods = 2.0 * X * P / (2.0 * kPi * hbar);
    composite_rule(-X, X, std::max(panels, static_cast<int>(std::ceil(periods / 2.0))), order, xs, xw);
    composite_rule(-Q, Q, panels, order, qs, qw);
    composite_rule(-P, P, panels, order, ps, pw);
    const std::size_t nx = xs.size(), nq = qs.size(), np = ps.size();
    const int nb = nmax + 1;
    std::vector<double> herm(nx * nb);
    for (std::size_t i = 0; i < nx; ++i) hermite_functions(xs[i], xi, nmax, &herm[i * nb]);
    std::vector<double> cs(np * nx), sn(np * nx);
    for (std::size_t j = 0; j < np; ++j)
        for (std::size_t i = 0; i < nx; ++i) {
            cs[j * nx + i] = std::cos(ps[j] * xs[i] / hbar);
            sn[j * nx + i] = std::sin(ps[j] * xs[i] / hbar);
        }
    // one-dimensional matrix M_ab = (2 pi hbar)^{-1} \int\int <h_a, c_pq><c_pq, h_b> dp dq
    Eigen::MatrixXd Mre = Eigen::MatrixXd::Zero(nb, nb);
    const double norm = std::pow(kPi * hbar, -0.25);
    std::vector<double> g(nx);
    std::vector<std::complex<double>> ov(nb);
    for (std::size_t k = 0; k < nq; ++k) {
        for (std::size_t i = 0; i < nx; ++i) {
            const double d = xs[i] - qs[k];
            g[i] = xw[i] * norm * std::exp(-0.5 * d * d / hbar);
        }
        for (std::size_t j = 0; j < np; ++j) {
            for (int a = 0; a < nb; ++a) {
                double re = 0.0, im = 0.0;
                for (std::size_t i = 0; i < nx; ++i) {
                    const double t = g[i] * herm[i * nb + a];
                    re += t * cs[j * nx + i];
                    im += t * sn[j * nx + i];
                }
                ov[a] = {re, im};
            }
            const double ww = qw[k] * pw[j] / (2.0 * kPi * hbar);
            for (int a = 0; a < nb; ++a)
                for (int b = 0; b < nb; ++b) Mre(a, b) += ww * (ov[a] * std::conj(ov[b])).real();
        }
    }
    double total = 0.0;
    for (std::size_t k = 0; k < probe.modes.size(); ++k)
        for (std::size_t l = 0; l < probe.modes.size(); ++l) {
            double prod = probe.coeffs[k] * probe.coeffs[l];
            for (int d = 0; d < 3; ++d) prod *= Mre(probe.modes[k][d], probe.modes[l][d]);
            total += prod;
        }
    return std::abs(total - 1.0);
}

BerezinLiebResult berezin_lieb_check(const RadialSymbol& a, const std::function<double(double)>& zeta, double hbar,
                                     int basis_dim, double tail_tol) {
    if (!(hbar > 0) || !(a.e_max > 0)) throw PreconditionError("berezin_lieb_check: need hbar > 0 and e_max > 0");
    if (zeta(0.0) != 0.0) throw PreconditionError("berezin_lieb_check: zeta(0) must vanish");
    const double smax = a.e_max / (2.0 * hbar);
    std::vector<double> sb;
    for (double b : a.breaks) sb.push_back(b / (2.0 * hbar));
    auto F = [&](double s) { return a.F(2.0 * hbar * s); };
    BerezinLiebResult res;
    res.levels = basis_dim;
    // level n of the 3D oscillator: degeneracy (n+1)(n+2)/2, eigenvalue \int F e^{-s} s^{n+2}/(n+2)! ds
    double trA = 0.0;
    for (int n = 0; n < basis_dim; ++n) {
        const double hi = std::min(smax, n + 2 + 14.0 * std::sqrt(n + 3.0) + 40.0);
        const double an = integrate_broken(
            [&](double s) { return s > 0 ? F(s) * std::exp(log_poisson(s, n + 2)) : 0.0; }, hi, sb);
        const double deg = 0.5 * (n + 1.0) * (n + 2.0);
        trA += deg * an;
        res.trace += deg * zeta(an);
    }
    const double intA = integrate_broken([&](double s) { return 0.5 * s * s * F(s); }, smax, sb);
    res.phase = integrate_broken([&](double s) { return s > 0 ? 0.5 * s * s * zeta(F(s)) : 0.0; }, smax, sb);
    res.tail = intA > 0 ? (intA - trA) / intA : 0.0;
    if (res.tail > tail_tol)
        throw QuadratureError("berezin_lieb_check: basis truncation misses " + std::to_string(res.tail) +
                              " of the trace");
    res.margin = res.phase - res.trace;
    return res;
}

BerezinLiebResult berezin_lieb_check(const SeparableSymbol& a, const std::function<double(double)>& zeta,
                                     double hbar, int basis_dim, double tail_tol) {
    if (!(hbar > 0) || !(a.e_max > 0)) throw PreconditionError("berezin_lieb_check: need hbar > 0 and e_max > 0");
    if (a.c.size() != a.phi.size() || a.c.empty()) throw PreconditionError("berezin_lieb_check: malformed symbol");
    if (zeta(0.0) != 0.0) throw PreconditionError("berezin_lieb_check: zeta(0) must vanish");
    const double smax = a.e_max / (2.0 * hbar);
    std::vector<double> sb;
    for (double b : a.breaks) sb.push_back(b / (2.0 * hbar));
    const std::size_t nk = a.c.size();
    const int K = basis_dim;
    // per-mode matrix elements m_k(n) = \int phi_k e^{-s} s^n/n! ds
    std::vector<std::vector<double>> m(nk, std::vector<double>(K));
    std::vector<double> integ(nk);
    for (std::size_t k = 0; k < nk; ++k) {
        auto phi = [&](double s) { return a.phi[k](2.0 * hbar * s); };
        for (int n = 0; n < K; ++n) {
            const double hi = std::min(smax, n + 14.0 * std::sqrt(n + 1.0) + 40.0);
            m[k][n] = integrate_broken(
                [&](double s) { return n == 0 ? phi(s) * std::exp(-s) : (s > 0 ? phi(s) * std::exp(log_poisson(s, n)) : 0.0); },
                hi, sb);
        }
        integ[k] = integrate_broken(phi, smax, sb);
    }
    BerezinLiebResult res;
    res.levels = K;
    double intA = 0.0, trA = 0.0;
    for (std::size_t k = 0; k < nk; ++k) {
        double sk = 0.0;
        for (int n = 0; n < K; ++n) sk += m[k][n];
        intA += a.c[k] * std::pow(integ[k], 3);
        trA += a.c[k] * std::pow(sk, 3);
    }
    double tr = 0.0;
    for (int n1 = 0; n1 < K; ++n1)
        for (int n2 = 0; n2 < K; ++n2)
            for (int n3 = 0; n3 < K; ++n3) {
                double v = 0.0;
                for (std::size_t k = 0; k < nk; ++k) v += a.c[k] * m[k][n1] * m[k][n2] * m[k][n3];
                tr += zeta(v);
            }
    res.trace = tr;
    // phase integral over [0, smax]^3 on a tensor rule aligned with the breaks
    std::vector<double> x, w;
    broken_rule(smax, sb, 6, 16, x, w);
    const std::size_t nx = x.size();
    std::vector<double> vals(nk * nx);
    for (std::size_t k = 0; k < nk; ++k)
        for (std::size_t i = 0; i < nx; ++i) vals[k * nx + i] = a.phi[k](2.0 * hbar * x[i]);
    double ph = 0.0;
    for (std::size_t i = 0; i < nx; ++i)
        for (std::size_t j = 0; j < nx; ++j) {
            double row = 0.0;
            for (std::size_t l = 0; l < nx; ++l) {
                double v = 0.0;
                for (std::size_t k = 0; k < nk; ++k) v += a.c[k] * vals[k * nx + i] * vals[k * nx + j] * vals[k * nx + l];
                row += w[l] * zeta(v);
            }
            ph += w[i] * w[j] * row;
        }
    res.phase = ph;
    res.tail = intA > 0 ? (intA - trA) / intA : 0.0;
    if (res.tail > tail_tol)
        throw QuadratureError("berezin_lieb_check: basis truncation misses " + std::to_string(res.tail) +
                              " of the trace");
    res.margin = res.phase - res.trace;
    return res;
}

double trace_convexity_check(const Eigen::MatrixXd& A, const Eigen::MatrixXd& Q, const std::function<double(double)>& f) {
    if (A.rows() != A.cols() || Q.rows() != A.rows() || Q.cols() != A.cols())
        throw PreconditionError("trace_convexity_check: shape mismatch");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eq(Q);
    std::vector<int> keep;
    for (int i = 0; i < Q.rows(); ++i)
        if (eq.eigenvalues()(i) > 0.5) keep.push_back(i);
    Eigen::MatrixXd V(A.rows(), static_cast<Eigen::Index>(keep.size()));
    for (std::size_t j = 0; j < keep.size(); ++j) V.col(j) = eq.eigenvectors().col(keep[j]);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> ea(A);
    Eigen::VectorXd fl = ea.eigenvalues().unaryExpr([&](double x) { return f(x); });
    // tr[V^T f(A) V] = sum_i f(l_i) |V^T e_i|^2
    const Eigen::MatrixXd proj = ea.eigenvectors().transpose() * V;
    const double lhs = (proj.rowwise().squaredNorm().array() * fl.array()).sum();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> ec(V.transpose() * A * V, Eigen::EigenvaluesOnly);
    double rhs = 0.0;
    for (int i = 0; i < ec.eigenvalues().size(); ++i) rhs += f(ec.eigenvalues()(i));
    return lhs - rhs;
}

double bose_bregman(double a, double b) {
    if (a < 0 || b < 0) throw DomainError("bose_bregman: arguments must be nonnegative");
    if (a == b) return 0.0;
    if (b == 0.0) return kInf;
    if (a == 0.0) return std::log1p(b);
    const double d = a - b;
    if (std::abs(d) > 0.5 * b) return a * std::log(a / b) - (1.0 + a) * std::log1p(d / (1.0 + b));
    // rewritten so that the O(d) parts cancel analytically
    return d * d / (b * (1.0 + b)) + a * ln1p_minus(d / b) - (1.0 + a) * ln1p_minus(d / (1.0 + b));
}

double phase_relative_entropy(const PhaseSampleSet& s) {
    if (s.a.size() != s.b.size() || s.a.size() != s.w.size()) throw PreconditionError("PhaseSampleSet: size mismatch");
    double e = 0.0;
    for (std::size_t i = 0; i < s.a.size(); ++i) e += s.w[i] * bose_bregman(s.a[i], s.b[i]);
    return e;
}

double phase_coercivity_ratio(const PhaseSampleSet& s) {
    const double S = phase_relative_entropy(s);
    double mass = 0.0, l1 = 0.0;
    for (std::size_t i = 0; i < s.a.size(); ++i) {
        mass += s.w[i] * (s.a[i] + s.b[i]) * (1.0 + s.b[i]);
        l1 += s.w[i] * std::abs(s.a[i] - s.b[i]);
    }
    if (l1 == 0.0) return kInf;
    return S * mass / (l1 * l1);
}

double operator_relative_entropy(const FiniteOperatorPair& pr) {
    if (pr.a.rows() != pr.b.rows() || pr.a.rows() != pr.a.cols() || pr.b.rows() != pr.b.cols())
        throw PreconditionError("operator_relative_entropy: shape mismatch");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> ea(pr.a), eb(pr.b);
    const Eigen::MatrixXd P = (ea.eigenvectors().transpose() * eb.eigenvectors()).array().square();
    double s = 0.0;
    for (int i = 0; i < P.rows(); ++i) {
        const double al = std::max(0.0, ea.eigenvalues()(i));
        for (int j = 0; j < P.cols(); ++j) {
            if (P(i, j) == 0.0) continue;
            s += P(i, j) * bose_bregman(al, std::max(0.0, eb.eigenvalues()(j)));
        }
    }
    return s;
}

double operator_coercivity_ratio(const FiniteOperatorPair& pr) {
    const double S = operator_relative_entropy(pr);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> ed(pr.a - pr.b, Eigen::EigenvaluesOnly);
    const double l1 = ed.eigenvalues().cwiseAbs().sum();
    if (l1 == 0.0) return kInf;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eb(pr.b, Eigen::EigenvaluesOnly);
    const double nb = 1.0 + eb.eigenvalues().maxCoeff();
    return S * nb * (pr.a + pr.b).trace() / (l1 * l1);
}

double positive_type_bound_check(const std::vector<special::Vec3>& points, const RadialDensity& eta,
                                 const Potential& v) {
    const std::size_t n = points.size();
    double pair = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            double d2 = 0.0;
            for (int k = 0; k < 3; ++k) d2 += (points[i][k] - points[j][k]) * (points[i][k] - points[j][k]);
            pair += v(std::sqrt(d2));
        }
    const ConvolutionOperator op(v, eta.grid);
    double lin = 0.0;
    for (const auto& x : points) lin += op.at(eta, std::sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]));
    const double D = interaction_energy(eta, eta, op);
    return pair - (lin - D - 0.5 * n * v.v0);
}

// ---------------------------------------------------------------------------
// randomized suites

namespace {

std::mt19937_64 instance_rng(std::uint64_t seed, std::uint64_t suite, std::uint64_t i) {
    std::seed_seq ss{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                     static_cast<std::uint32_t>(suite), static_cast<std::uint32_t>(i)};
    return std::mt19937_64(ss);
}

double uni(std::mt19937_64& r, double a, double b) { return std::uniform_real_distribution<double>(a, b)(r); }

std::function<double(double)> pick_zeta(int kind, std::mt19937_64& rng) {
    switch (kind) {
        case 0: return [](double x) { return x * x; };
        case 1: return [](double x) { return special::bose_entropy_f(std::max(x, 0.0)); };
        case 2: {
            const double c = uni(rng, 0.5, 2.0);
            return [c](double x) { return c * x; };
        }
        default: return [](double x) { return std::expm1(x) - x; };
    }
}

double berezin_instance(std::mt19937_64& rng, int i) {
    const double hbar = uni(rng, 0.25, 1.0);
    const int type = i % 4;
    int zk = (i / 4) % 4;
    if (type == 2 && zk == 3) zk = 0;  // exponential zeta is not integrable against the Bose symbol
    const auto zeta = pick_zeta(zk, rng);
    if (type < 3) {
        RadialSymbol a;
        if (type == 0) {
            const double A = uni(rng, 0.2, 3.0), R = uni(rng, 0.5, 4.0);
            a.F = [A, R](double E) { return E < R ? A : 0.0; };
            a.e_max = R;
            a.breaks = {R};
        } else if (type == 1) {
            const double A = uni(rng, 0.2, 3.0), T = uni(rng, 0.3, 2.0);
            a.F = [A, T](double E) { return A * std::exp(-E / T); };
            a.e_max = 45.0 * T;
        } else {
            const double beta = uni(rng, 0.5, 3.0);
            a.F = [beta](double E) { return 1.0 / std::expm1(beta * E); };
            a.e_max = 45.0 / beta;
        }
        return berezin_lieb_check(a, zeta, hbar, 200).margin;
    }
    SeparableSymbol a;
    const int terms = 1 + static_cast<int>(uni(rng, 0.0, 2.0));
    double emax = 0.0;
    for (int k = 0; k < terms; ++k) {
        a.c.push_back(uni(rng, 0.2, 2.0));
        if (uni(rng, 0.0, 1.0) < 0.5) {
            const double c = uni(rng, 0.5, 3.0);
            a.phi.push_back([c](double e) { return e < c ? 1.0 : 0.0; });
            a.breaks.push_back(c);
            emax = std::max(emax, c);
        } else {
            const double T = uni(rng, 0.5, 2.0);
            a.phi.push_back([T](double e) { return std::exp(-e / T); });
            emax = std::max(emax, 40.0 * T);
        }
    }
    a.e_max = emax;
    return berezin_lieb_check(a, zeta, hbar, 110).margin;
}

Eigen::MatrixXd random_matrix(std::mt19937_64& rng, int r, int c) {
    std::normal_distribution<double> g;
    Eigen::MatrixXd m(r, c);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < c; ++j) m(i, j) = g(rng);
    return m;
}

double trace_convexity_instance(std::mt19937_64& rng, int i) {
    const int d = i % 50 == 49 ? 64 : 2 + static_cast<int>(uni(rng, 0.0, 23.0));
    const int k = 1 + static_cast<int>(uni(rng, 0.0, d));
    const Eigen::MatrixXd G = random_matrix(rng, d, d);
    Eigen::MatrixXd A;
    std::function<double(double)> f;
    switch (i % 3) {
        case 0:
            A = 0.5 * (G + G.transpose());
            f = [](double x) { return x * x; };
            break;
        case 1:
            A = G * G.transpose() / d + 1e-3 * Eigen::MatrixXd::Identity(d, d);
            f = [](double x) { return special::bose_entropy_f(std::max(x, 0.0)); };
            break;
        default:
            A = 0.5 * (G + G.transpose()) / std::sqrt(double(d));
            f = [](double x) { return std::exp(x); };
    }
    const Eigen::HouseholderQR<Eigen::MatrixXd> qr(random_matrix(rng, d, k));
    const Eigen::MatrixXd V = qr.householderQ() * Eigen::MatrixXd::Identity(d, k);
    return trace_convexity_check(A, V * V.transpose(), f);
}

double phase_instance(std::mt19937_64& rng, int i) {
    const int n = 1 + static_cast<int>(uni(rng, 0.0, 60.0));
    PhaseSampleSet s;
    std::normal_distribution<double> g(0.0, 2.0);
    for (int j = 0; j < n; ++j) {
        s.w.push_back(uni(rng, 0.1, 2.0));
        const double b = std::exp(g(rng));
        s.b.push_back(b);
        double a;
        if (i % 5 == 4) a = b * (1.0 + std::pow(10.0, -uni(rng, 1.0, 6.0)));
        else a = uni(rng, 0.0, 1.0) < 0.2 ? 0.0 : std::exp(g(rng));
        s.a.push_back(a);
    }
    if (s.a == s.b) s.a[0] += 1.0;
    return phase_coercivity_ratio(s);
}

double operator_instance(std::mt19937_64& rng, int i) {
    const int dims[] = {2, 4, 8};
    const int d = dims[i % 3];
    const int ra = (i / 3) % 4 == 0 ? std::max(1, d / 2) : d;
    const Eigen::MatrixXd X = random_matrix(rng, d, ra), Y = random_matrix(rng, d, d);
    FiniteOperatorPair pr;
    pr.a = std::exp(uni(rng, -2.0, 2.0)) * X * X.transpose() / d;
    pr.b = std::exp(uni(rng, -2.0, 2.0)) * Y * Y.transpose() / d + uni(rng, 1e-3, 1.0) * Eigen::MatrixXd::Identity(d, d);
    return operator_coercivity_ratio(pr);
}

double positive_type_instance(std::mt19937_64& rng, int i) {
    const double a = uni(rng, 0.2, 2.0), sigma = uni(rng, 0.3, 2.0);
    const Potential v = make_gaussian_potential(a, sigma);
    const int n = 20;
    const bool near_optimal = i % 4 == 3;
    const double width = near_optimal ? 0.05 : uni(rng, 0.3, 2.0);
    const double mass = near_optimal ? double(n) : uni(rng, 0.5, 40.0);
    const GridPtr grid = quad::make_radial_grid(10.0 * width, 256);
    RadialDensity eta{grid, std::vector<double>(grid->size()), 0.0};
    for (std::size_t j = 0; j < grid->size(); ++j) {
        const double r = grid->r[j] / width;
        eta.values[j] = mass * std::pow(kPi * width * width, -1.5) * std::exp(-r * r);
    }
    std::vector<special::Vec3> pts(n);
    std::normal_distribution<double> g(0.0, near_optimal ? width : uni(rng, 0.2, 2.0));
    for (auto& p : pts) p = {g(rng), g(rng), g(rng)};
    return positive_type_bound_check(pts, eta, v);
}

double resolution_instance(std::mt19937_64& rng, int i) {
    const double hbar = uni(rng, 0.1, 1.0);
    HermiteProbe probe;
    switch (i % 5) {
        case 0: probe = window_probe(hbar); break;
        case 1: probe = oscillator_probe(hbar, 1.0, {1, 0, 0}); break;
        case 2: probe = random_oscillator_probe(hbar, 1.0, 5, rng); break;
        case 3: probe = oscillator_probe(hbar, 0.5, {0, 1, 2}); break;
        default: probe = random_oscillator_probe(hbar, 3.0, 5, rng); break;
    }
    return coherent_resolution_check(hbar, probe);
}

struct SuiteSpec {
    const char* name;
    const char* quantity;
    const char* criterion;
    double threshold;
    int instances;
    double (*fn)(std::mt19937_64&, int);
};

const SuiteSpec kSuites[] = {
    {"resolution", "defect", "max < t", 1e-5, 5, resolution_instance},
    {"berezin_lieb", "margin", "min >= t", -1e-8, 100, berezin_instance},
    {"trace_convexity", "margin", "min >= t", -1e-10, 1000, trace_convexity_instance},
    {"phase_coercivity", "ratio", "min > t", 0.0, 1000, phase_instance},
    {"operator_coercivity", "ratio", "min > t", 0.0, 1000, operator_instance},
    {"positive_type", "margin", "min >= t", -1e-8, 200, positive_type_instance},
};

}  // namespace

std::vector<std::string> suite_names() {
    std::vector<std::string> out;
    for (const auto& s : kSuites) out.emplace_back(s.name);
    return out;
}

SuiteReport run_suite(const std::string& name, std::uint64_t seed, int instances) {
    const SuiteSpec* spec = nullptr;
    std::uint64_t id = 0;
    for (std::uint64_t k = 0; k < std::size(kSuites); ++k)
        if (name == kSuites[k].name) {
            spec = &kSuites[k];
            id = k;
        }
    if (!spec) throw PreconditionError("unknown property suite '" + name + "'");
    SuiteReport rep;
    rep.name = name;
    rep.quantity = spec->quantity;
    rep.criterion = spec->criterion;
    rep.threshold = spec->threshold;
    rep.seed = seed;
    rep.instances = instances > 0 ? instances : spec->instances;
    rep.values.assign(rep.instances, 0.0);
    std::vector<std::exception_ptr> errors(rep.instances);
    kernels::parallel_for(rep.instances, [&](long i) {
        try {
            auto rng = instance_rng(seed, id, static_cast<std::uint64_t>(i));
            rep.values[i] = spec->fn(rng, static_cast<int>(i));
        } catch (...) {
            errors[i] = std::current_exception();
        }
    });
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
    rep.min_value = *std::min_element(rep.values.begin(), rep.values.end());
    rep.max_value = *std::max_element(rep.values.begin(), rep.values.end());
    const std::string c = rep.criterion;
    if (c == "max < t") rep.passed = rep.max_value < rep.threshold;
    else if (c == "min > t") rep.passed = rep.min_value > rep.threshold;
    else rep.passed = rep.min_value >= rep.threshold;
    return rep;
}

}  // namespace bosegas::lab
