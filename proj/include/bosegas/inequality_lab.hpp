#pragma once

#include <Eigen/Dense>

#include <array>
#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "bosegas/potentials.hpp"
#include "bosegas/special_functions.hpp"

namespace bosegas::lab {

// Probe psi = sum_k c_k h_{n1} (x) h_{n2} (x) h_{n3} built from Hermite functions
// h_n(x/xi) of width xi. coeffs are normalized on construction.
struct HermiteProbe {
    double xi = 1;
    std::vector<std::array<int, 3>> modes;
    std::vector<double> coeffs;
    void normalize();
};

// The window itself: h_0 with xi^2 = hbar.
HermiteProbe window_probe(double hbar);
// Eigenfunction of -hbar^2 Lap + omega^2 x^2/4 (xi^2 = 2 hbar/omega).
HermiteProbe oscillator_probe(double hbar, double omega, std::array<int, 3> n);
HermiteProbe random_oscillator_probe(double hbar, double omega, int n_modes, std::mt19937_64& rng, int max_level = 3);

// |(2 pi hbar)^{-3} \int |<psi, coherent(p,q)>|^2 dp dq - 1| by direct quadrature in x, p and q.
double coherent_resolution_check(double hbar, const HermiteProbe& probe, int n_quad = 160);

// Symbols on R^6 for the Berezin-Lieb check. The oscillator with omega = 2 shares its
// ground state with the window, so anti-Wick quantization of the symbols below is diagonal
// in the Fock basis.
// F and phi are taken to vanish beyond e_max; breaks lists their discontinuities.
struct RadialSymbol {  // a(p, q) = F(p^2 + q^2)
    std::function<double(double)> F;
    double e_max = 0;
    std::vector<double> breaks;
    std::string label;
};
struct SeparableSymbol {  // a(p, q) = sum_k c_k prod_i phi_k(p_i^2 + q_i^2)
    std::vector<double> c;
    std::vector<std::function<double(double)>> phi;
    double e_max = 0;
    std::vector<double> breaks;
    std::string label;
};

struct BerezinLiebResult {
    double margin = 0;       // phase integral - trace
    double phase = 0;        // (2 pi hbar)^{-3} \int zeta(a)
    double trace = 0;        // tr zeta(A) over the kept basis
    double tail = 0;         // (\int a - tr A_kept) / \int a
    int levels = 0;
};

// Throws QuadratureError when the truncated basis misses more than tail_tol of tr A.
BerezinLiebResult berezin_lieb_check(const RadialSymbol& a, const std::function<double(double)>& zeta, double hbar,
                                     int basis_dim, double tail_tol = 1e-8);
BerezinLiebResult berezin_lieb_check(const SeparableSymbol& a, const std::function<double(double)>& zeta,
                                     double hbar, int basis_dim, double tail_tol = 1e-8);

// tr[Q f(A) Q] - tr[f(QAQ)] with QAQ taken on the range of Q.
double trace_convexity_check(const Eigen::MatrixXd& A, const Eigen::MatrixXd& Q,
                             const std::function<double(double)>& f);

// Weighted samples of two nonnegative functions on a common grid.
struct PhaseSampleSet {
    std::vector<double> a, b, w;
};

// a ln(a/b) - (1+a) ln((1+a)/(1+b)), stable for a close to b
double bose_bregman(double a, double b);

// S(a,b) [\int (a+b)(1+b)] / [\int |a-b|]^2; +infinity when a = b.
double phase_coercivity_ratio(const PhaseSampleSet& s);
double phase_relative_entropy(const PhaseSampleSet& s);

struct FiniteOperatorPair {
    Eigen::MatrixXd a, b;
};

// tr[a(ln a - ln b) - (1+a)(ln(1+a) - ln(1+b))]
double operator_relative_entropy(const FiniteOperatorPair& pr);
// S(a,b) ||1+b|| tr[a+b] / ||a-b||_1^2; +infinity when a = b.
double operator_coercivity_ratio(const FiniteOperatorPair& pr);

// sum_{i<j} v(x_i - x_j) - [sum_i (eta*v)(x_i) - D(eta,eta) - N v(0)/2]
double positive_type_bound_check(const std::vector<special::Vec3>& points, const RadialDensity& eta,
                                 const Potential& v);

struct SuiteReport {
    std::string name;
    std::string quantity;    // margin, ratio or defect
    std::string criterion;   // "min >= t", "min > t" or "max < t"
    double threshold = 0;
    int instances = 0;
    double min_value = 0;
    double max_value = 0;
    bool passed = false;
    std::uint64_t seed = 0;
    std::vector<double> values;
};

// Names: resolution, berezin_lieb, trace_convexity, phase_coercivity, operator_coercivity, positive_type.
std::vector<std::string> suite_names();
SuiteReport run_suite(const std::string& name, std::uint64_t seed, int instances = -1);

}  // namespace bosegas::lab
