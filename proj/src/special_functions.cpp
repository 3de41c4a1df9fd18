#include "bosegas/special_functions.hpp"

#include <cmath>
#include <numbers>
#include <vector>

#include "bosegas/errors.hpp"

namespace bosegas::special {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kLn2 = std::numbers::ln2;

// B_2, B_4, ..., B_30
constexpr double kBernoulli[] = {
    1.0 / 6.0,          -1.0 / 30.0,         1.0 / 42.0,          -1.0 / 30.0,
    5.0 / 66.0,         -691.0 / 2730.0,     7.0 / 6.0,           -3617.0 / 510.0,
    43867.0 / 798.0,    -174611.0 / 330.0,   854513.0 / 138.0,    -236364091.0 / 2730.0,
    8553103.0 / 6.0,    -23749461029.0 / 870.0, 8615841276005.0 / 14322.0};

// Euler-Maclaurin summation, used for s >= 1/2.
double zeta_em(double s) {
    constexpr int n = 16;
    double sum = 0.0;
    for (int k = 1; k < n; ++k) sum += std::pow(double(k), -s);
    const double nn = n;
    sum += std::pow(nn, 1.0 - s) / (s - 1.0) + 0.5 * std::pow(nn, -s);
    // term_j = B_{2j}/(2j)! * s(s+1)...(s+2j-2) * n^{-s-2j+1}
    double rising = s;                 // s (s+1) ... (s+2j-2)
    double fact = 2.0;                 // (2j)!
    double npow = std::pow(nn, -s - 1.0);
    for (int j = 1; j <= 15; ++j) {
        const double term = kBernoulli[j - 1] / fact * rising * npow;
        sum += term;
        if (std::abs(term) < 1e-18 * std::abs(sum)) break;
        rising *= (s + 2 * j - 1) * (s + 2 * j);
        fact *= (2.0 * j + 1) * (2.0 * j + 2);
        npow /= nn * nn;
    }
    return sum;
}

int order_index(PolylogOrder s) { return static_cast<int>(s); }

constexpr int kSeriesTerms = 40;
constexpr int kDirectTerms = 64;

struct OrderTables {
    double s = 0;
    bool integer = false;
    double gamma_1ms = 0;                     // Gamma(1-s), non-integer orders
    double harmonic = 0;                      // H_{s-1}, integer orders
    std::array<double, kSeriesTerms> coef{};  // zeta(s-k)/k!
    std::array<double, kDirectTerms + 1> inv_pow{};  // k^{-s}
};

OrderTables build_tables(PolylogOrder o) {
    OrderTables t;
    t.s = order_value(o);
    t.integer = (o == PolylogOrder::Three || o == PolylogOrder::Four);
    if (!t.integer) t.gamma_1ms = std::tgamma(1.0 - t.s);
    double kfact = 1.0;
    for (int k = 0; k < kSeriesTerms; ++k) {
        if (k > 0) kfact *= k;
        const double arg = t.s - k;
        t.coef[k] = (t.integer && arg == 1.0) ? 0.0 : zeta(arg) / kfact;
    }
    if (t.integer) {
        const int n = static_cast<int>(t.s);
        for (int j = 1; j < n; ++j) t.harmonic += 1.0 / j;
    }
    for (int k = 1; k <= kDirectTerms; ++k) t.inv_pow[k] = std::pow(double(k), -t.s);
    return t;
}

const OrderTables& tables(PolylogOrder o) {
    static const std::array<OrderTables, 5> all = {
        build_tables(PolylogOrder::Half), build_tables(PolylogOrder::ThreeHalves),
        build_tables(PolylogOrder::FiveHalves), build_tables(PolylogOrder::Three),
        build_tables(PolylogOrder::Four)};
    return all[order_index(o)];
}

double polylog_direct(const OrderTables& tb, double z) {
    double sum = 0.0;
    double zk = z;
    for (int k = 1; k <= kDirectTerms; ++k) {
        const double term = zk * tb.inv_pow[k];
        sum += term;
        if (term < 1e-18 * sum) break;
        zk *= z;
    }
    return sum;
}

// Expansion in t = -ln z, valid for |t| < 2 pi.
double polylog_near_one(const OrderTables& tb, double t) {
    double sum = 0.0;
    double mt = 1.0;  // (-t)^k
    const int n = static_cast<int>(tb.s);
    for (int k = 0; k < kSeriesTerms; ++k) {
        if (tb.integer && k == n - 1) {
            double fact = 1.0;
            for (int j = 2; j < n; ++j) fact *= j;
            sum += mt / fact * (tb.harmonic - std::log(t));
        } else {
            const double term = tb.coef[k] * mt;
            sum += term;
            if (k > n + 2 && term != 0.0 && std::abs(term) < 1e-18 * std::abs(sum)) break;
        }
        mt *= -t;
    }
    if (!tb.integer) sum += tb.gamma_1ms * std::pow(t, tb.s - 1.0);
    return sum;
}

}  // namespace

double order_value(PolylogOrder s) {
    switch (s) {
        case PolylogOrder::Half: return 0.5;
        case PolylogOrder::ThreeHalves: return 1.5;
        case PolylogOrder::FiveHalves: return 2.5;
        case PolylogOrder::Three: return 3.0;
        case PolylogOrder::Four: return 4.0;
    }
    return 0.0;
}

PolylogOrder polylog_order(double s) {
    if (s == 0.5) return PolylogOrder::Half;
    if (s == 1.5) return PolylogOrder::ThreeHalves;
    if (s == 2.5) return PolylogOrder::FiveHalves;
    if (s == 3.0) return PolylogOrder::Three;
    if (s == 4.0) return PolylogOrder::Four;
    throw DomainError("polylog order must be one of 1/2, 3/2, 5/2, 3, 4");
}

double bose_entropy_f(double x) {
    if (!(x >= 0.0)) throw DomainError("bose_entropy_f: x must be nonnegative");
    if (x == 0.0) return 0.0;
    if (x < 1e-12) return x * (std::log(x) - 1.0) - 0.5 * x * x;
    return -x * std::log1p(1.0 / x) - std::log1p(x);
}

double bose_entropy_f_prime(double x) {
    if (!(x > 0.0)) throw DomainError("bose_entropy_f_prime: x must be positive");
    return -std::log1p(1.0 / x);
}

double bose_entropy_f_second(double x) {
    if (!(x > 0.0)) throw DomainError("bose_entropy_f_second: x must be positive");
    return 1.0 / (x * (1.0 + x));
}

double zeta(double s) {
    if (s == 1.0) throw DomainError("zeta: pole at s = 1");
    if (s >= 0.5) return zeta_em(s);
    if (s == 0.0) return -0.5;
    // negative even integers are trivial zeros
    if (s < 0 && s == std::floor(s) && std::fmod(-s, 2.0) == 0.0) return 0.0;
    // functional equation
    return std::pow(2.0, s) * std::pow(kPi, s - 1.0) * std::sin(0.5 * kPi * s) *
           std::tgamma(1.0 - s) * zeta_em(1.0 - s);
}

double polylog_exp(PolylogOrder s, double t) {
    if (!(t >= 0.0)) throw DomainError("polylog_exp: t must be nonnegative");
    const OrderTables& tb = tables(s);
    if (t == 0.0) {
        if (s == PolylogOrder::Half) throw DomainError("polylog: Li_{1/2}(1) diverges");
        return zeta(tb.s);
    }
    if (t >= kLn2) return polylog_direct(tb, std::exp(-t));
    return polylog_near_one(tb, t);
}

double polylog(PolylogOrder s, double z) {
    if (!(z >= 0.0 && z <= 1.0)) throw DomainError("polylog: z must lie in [0,1]");
    if (z == 0.0) return 0.0;
    if (z <= 0.5) return polylog_direct(tables(s), z);
    return polylog_exp(s, -std::log(z));
}

double eta(double t) {
    if (!(t >= 0.0)) throw DomainError("eta: t must be nonnegative");
    static const double c = std::pow(4.0 * kPi, -1.5);
    return c * polylog_exp(PolylogOrder::ThreeHalves, t);
}

double eta_prime(double t) {
    if (!(t > 0.0)) throw DomainError("eta_prime: t must be positive");
    static const double c = std::pow(4.0 * kPi, -1.5);
    return -c * polylog_exp(PolylogOrder::Half, t);
}

double log_mehler_kernel(double t, const Vec3& x, const Vec3& y, double omega, double hbar) {
    if (!(t > 0.0)) throw DomainError("mehler_kernel: t must be positive");
    if (!(omega > 0.0 && hbar > 0.0)) throw DomainError("mehler_kernel: omega, hbar must be positive");
    const double tau = t * hbar * omega;
    const double e2 = std::exp(-2.0 * tau);
    const double one_minus_e2 = -std::expm1(-2.0 * tau);
    // log sinh(tau), coth(tau), 1/sinh(tau) without overflow
    const double log_sinh = tau - kLn2 + std::log(one_minus_e2);
    const double coth = (1.0 + e2) / one_minus_e2;
    const double csch = 2.0 * std::exp(-tau) / one_minus_e2;
    double xx = 0, yy = 0, xy = 0;
    for (int i = 0; i < 3; ++i) {
        xx += x[i] * x[i];
        yy += y[i] * y[i];
        xy += x[i] * y[i];
    }
    const double m = omega / (2.0 * hbar);
    return 1.5 * std::log(m) - 1.5 * std::log(2.0 * kPi) - 1.5 * log_sinh -
           0.5 * m * (coth * (xx + yy) - 2.0 * csch * xy);
}

double mehler_kernel(double t, const Vec3& x, const Vec3& y, double omega, double hbar) {
    return std::exp(log_mehler_kernel(t, x, y, omega, hbar));
}

double mehler_trace(double t, double omega, double hbar) {
    const double s = 2.0 * std::sinh(0.5 * t * hbar * omega);
    return 1.0 / (s * s * s);
}

}  // namespace bosegas::special
