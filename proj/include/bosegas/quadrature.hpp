#pragma once

#include <functional>
#include <memory>
#include <vector>

namespace bosegas::quad {

struct Rule {
    std::vector<double> x;
    std::vector<double> w;
};

// n-point Gauss-Legendre rule on [-1, 1].
Rule gauss_legendre(int n);

// Adaptive 15-point Gauss-Kronrod. Throws QuadratureError when the error
// estimate cannot be pushed below max(abs_tol, rel_tol*|I|).
double integrate(const std::function<double(double)>& f, double a, double b,
                 double abs_tol = 1e-10, double rel_tol = 1e-12, int max_intervals = 4000);

// Nodes and weights on [0, r_max]. Node 0 is the origin with weight 0 so that
// values at r = 0 travel with the grid.
struct RadialGrid {
    std::vector<double> r;
    std::vector<double> w;
    double r_max = 0;
    bool uniform = false;
    std::size_t size() const { return r.size(); }
    // \int f(r) dr over the grid
    double integrate(const std::vector<double>& f) const;
    // 4 pi \int r^2 f(r) dr
    double integrate_3d(const std::vector<double>& f) const;
};

using GridPtr = std::shared_ptr<const RadialGrid>;

// Composite Gauss-Legendre grid with panels refined geometrically towards the
// origin. n_points is rounded to a multiple of `order`.
GridPtr make_radial_grid(double r_max, int n_points = 512, int order = 16);

// Uniform grid r_i = i h, i = 0..n+1, h = r_max/(n+1), trapezoid weights.
GridPtr make_uniform_grid(double r_max, int n_interior);

}  // namespace bosegas::quad
