#pragma once

#include <array>

namespace bosegas::special {

using Vec3 = std::array<double, 3>;

// Orders for which polylogarithms are provided.
enum class PolylogOrder { Half, ThreeHalves, FiveHalves, Three, Four };

double order_value(PolylogOrder s);
// Throws DomainError unless s is one of 1/2, 3/2, 5/2, 3, 4.
PolylogOrder polylog_order(double s);

// f(x) = x ln x - (1+x) ln(1+x), x >= 0.
double bose_entropy_f(double x);
// f'(x) = ln(x/(1+x)), x > 0.
double bose_entropy_f_prime(double x);
// f''(x) = 1/(x(1+x)), x > 0.
double bose_entropy_f_second(double x);

// Riemann zeta on the real line, s != 1.
double zeta(double s);

// Li_s(z) for z in [0,1].
double polylog(PolylogOrder s, double z);
// Li_s(e^{-t}) for t >= 0; avoids forming z when t is small.
double polylog_exp(PolylogOrder s, double t);

// eta(t) = (2pi)^{-3} \int dp 1/(e^{p^2+t}-1) = (4pi)^{-3/2} Li_{3/2}(e^{-t}).
double eta(double t);
double eta_prime(double t);

// Heat kernel e^{-t h}(x,y) of h = -hbar^2 Laplacian + omega^2 x^2/4 in three dimensions.
double mehler_kernel(double t, const Vec3& x, const Vec3& y, double omega, double hbar);
double log_mehler_kernel(double t, const Vec3& x, const Vec3& y, double omega, double hbar);
// Closed-form trace (2 sinh(t hbar omega / 2))^{-3}.
double mehler_trace(double t, double omega, double hbar);

}  // namespace bosegas::special
