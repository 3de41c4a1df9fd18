#include "bosegas/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <queue>

#include "bosegas/errors.hpp"

namespace bosegas::quad {

Rule gauss_legendre(int n) {
    static std::mutex mu;
    static std::map<int, Rule> cache;
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(n);
        if (it != cache.end()) return it->second;
    }
    if (n < 1) throw DomainError("gauss_legendre: n must be positive");
    Rule rule;
    rule.x.resize(n);
    rule.w.resize(n);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = z;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            if (n == 1) p0 = 1.0;
            dp = n * (z * p1 - p0) / (z * z - 1.0);
            const double dz = p1 / dp;
            z -= dz;
            if (std::abs(dz) < 1e-16) break;
        }
        double p0 = 1.0, p1 = z;
        for (int k = 2; k <= n; ++k) {
            const double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        if (n == 1) p0 = 1.0;
        dp = n * (z * p1 - p0) / (z * z - 1.0);
        rule.x[i] = -z;
        rule.x[n - 1 - i] = z;
        rule.w[i] = rule.w[n - 1 - i] = 2.0 / ((1.0 - z * z) * dp * dp);
    }
    if (n % 2 == 1) rule.x[n / 2] = 0.0;
    std::lock_guard<std::mutex> lock(mu);
    cache.emplace(n, rule);
    return rule;
}

namespace {

constexpr double kXgk[8] = {0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
                            0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
                            0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
                            0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double kWgk[8] = {0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
                            0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
                            0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
                            0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                           0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
    double a, b, value, error;
    bool operator<(const Segment& o) const { return error < o.error; }
};

Segment gk15(const std::function<double(double)>& f, double a, double b) {
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    const double fc = f(c);
    double rk = fc * kWgk[7];
    double rg = fc * kWg[3];
    for (int j = 0; j < 7; ++j) {
        const double dx = h * kXgk[j];
        const double f1 = f(c - dx), f2 = f(c + dx);
        rk += kWgk[j] * (f1 + f2);
        if (j % 2 == 1) rg += kWg[j / 2] * (f1 + f2);
    }
    return {a, b, rk * h, std::abs((rk - rg) * h)};
}

}  // namespace

double integrate(const std::function<double(double)>& f, double a, double b, double abs_tol,
                 double rel_tol, int max_intervals) {
    if (a == b) return 0.0;
    std::priority_queue<Segment> heap;
    Segment s0 = gk15(f, a, b);
    double total = s0.value, err = s0.error;
    heap.push(s0);
    int count = 1;
    while (err > std::max(abs_tol, rel_tol * std::abs(total))) {
        if (count >= max_intervals) {
            throw QuadratureError("adaptive quadrature did not reach tolerance (error estimate " +
                                  std::to_string(err) + ")");
        }
        Segment s = heap.top();
        heap.pop();
        const double m = 0.5 * (s.a + s.b);
        Segment l = gk15(f, s.a, m), r = gk15(f, m, s.b);
        total += l.value + r.value - s.value;
        err += l.error + r.error - s.error;
        heap.push(l);
        heap.push(r);
        ++count;
        if (!std::isfinite(total)) throw QuadratureError("adaptive quadrature: non-finite integrand");
    }
    // re-sum to limit round-off from the running updates
    double sum = 0.0;
    while (!heap.empty()) {
        sum += heap.top().value;
        heap.pop();
    }
    return sum;
}

double RadialGrid::integrate(const std::vector<double>& f) const {
    double s = 0.0;
    for (std::size_t i = 0; i < r.size(); ++i) s += w[i] * f[i];
    return s;
}

double RadialGrid::integrate_3d(const std::vector<double>& f) const {
    double s = 0.0;
    for (std::size_t i = 0; i < r.size(); ++i) s += w[i] * r[i] * r[i] * f[i];
    return 4.0 * std::numbers::pi * s;
}

GridPtr make_radial_grid(double r_max, int n_points, int order) {
    if (!(r_max > 0)) throw DomainError("make_radial_grid: r_max must be positive");
    const int n_panels = std::max(8, n_points / order);
    constexpr int n_geo = 5;
    // panels: [0,H/16], [H/16,H/8], ..., [H/2,H], then uniform on [H, r_max]
    const double H = r_max / (n_panels - n_geo + 1);
    std::vector<double> edges{0.0};
    for (int k = n_geo - 1; k >= 0; --k) edges.push_back(H / std::pow(2.0, k));
    for (int k = 1; k <= n_panels - n_geo; ++k) edges.push_back(H + k * (r_max - H) / (n_panels - n_geo));
    edges.back() = r_max;
    const Rule rule = gauss_legendre(order);
    auto g = std::make_shared<RadialGrid>();
    g->r_max = r_max;
    g->r.push_back(0.0);
    g->w.push_back(0.0);
    for (std::size_t p = 0; p + 1 < edges.size(); ++p) {
        const double a = edges[p], b = edges[p + 1];
        for (int i = 0; i < order; ++i) {
            g->r.push_back(0.5 * (a + b) + 0.5 * (b - a) * rule.x[i]);
            g->w.push_back(0.5 * (b - a) * rule.w[i]);
        }
    }
    return g;
}

GridPtr make_uniform_grid(double r_max, int n_interior) {
    if (!(r_max > 0) || n_interior < 2) throw DomainError("make_uniform_grid: bad arguments");
    auto g = std::make_shared<RadialGrid>();
    g->r_max = r_max;
    g->uniform = true;
    const double h = r_max / (n_interior + 1);
    for (int i = 0; i <= n_interior + 1; ++i) {
        g->r.push_back(i * h);
        g->w.push_back((i == 0 || i == n_interior + 1) ? 0.5 * h : h);
    }
    return g;
}

}  // namespace bosegas::quad
