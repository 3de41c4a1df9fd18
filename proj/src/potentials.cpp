#include "bosegas/potentials.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>

#include "bosegas/errors.hpp"
#include "bosegas/kernels.hpp"

namespace bosegas {

namespace {

constexpr double kPi = std::numbers::pi;

class GaussianProfile final : public PotentialProfile {
public:
    GaussianProfile(double a, double sigma) : a_(a), s2_(sigma * sigma), sigma_(sigma) {}
    double value(double r) const override { return a_ * std::exp(-0.5 * r * r / s2_); }
    double moment(double t) const override { return -a_ * s2_ * std::expm1(-0.5 * t * t / s2_); }
    double shell(double r, double s) const override {
        const double d = r - s;
        return a_ * s2_ * std::exp(-0.5 * d * d / s2_) * (-std::expm1(-2.0 * r * s / s2_));
    }
    double laplacian(double r) const override {
        return value(r) * (r * r / (s2_ * s2_) - 3.0 / s2_);
    }
    double fourier(double p) const override {
        return a_ * sigma_ * s2_ * std::exp(-0.5 * s2_ * p * p);
    }
    double support() const override { return std::numeric_limits<double>::infinity(); }

private:
    double a_, s2_, sigma_;
};

class ZeroProfile final : public PotentialProfile {
public:
    double value(double) const override { return 0.0; }
    double moment(double) const override { return 0.0; }
    double shell(double, double) const override { return 0.0; }
    double laplacian(double) const override { return 0.0; }
    double fourier(double) const override { return 0.0; }
    double support() const override { return 0.0; }
};

// Cubic spline with S'(0) = 0 and S''(r_n) = 0; zero beyond the last node.
class TableProfile final : public PotentialProfile {
public:
    TableProfile(std::vector<double> x, std::vector<double> y) : x_(std::move(x)), y_(std::move(y)) {
        const std::size_t n = x_.size() - 1;
        m_.assign(n + 1, 0.0);
        // tridiagonal system for second derivatives m_0..m_{n-1}, m_n = 0
        std::vector<double> a(n, 0.0), b(n, 0.0), c(n, 0.0), d(n, 0.0);
        {
            const double h0 = x_[1] - x_[0];
            b[0] = h0 / 3.0;
            c[0] = h0 / 6.0;
            d[0] = (y_[1] - y_[0]) / h0;  // - S'(0) with S'(0) = 0
        }
        for (std::size_t i = 1; i < n; ++i) {
            const double h0 = x_[i] - x_[i - 1], h1 = x_[i + 1] - x_[i];
            a[i] = h0 / 6.0;
            b[i] = (h0 + h1) / 3.0;
            c[i] = h1 / 6.0;
            d[i] = (y_[i + 1] - y_[i]) / h1 - (y_[i] - y_[i - 1]) / h0;
        }
        for (std::size_t i = 1; i < n; ++i) {
            const double f = a[i] / b[i - 1];
            b[i] -= f * c[i - 1];
            d[i] -= f * d[i - 1];
        }
        if (n >= 1) m_[n - 1] = d[n - 1] / b[n - 1];
        for (std::size_t i = n - 1; i-- > 0;) m_[i] = (d[i] - c[i] * m_[i + 1]) / b[i];
        cum_.assign(n + 1, 0.0);
        for (std::size_t i = 0; i < n; ++i) cum_[i + 1] = cum_[i] + partial_moment(i, x_[i + 1] - x_[i]);
    }

    double value(double r) const override {
        if (r >= x_.back()) return 0.0;
        const std::size_t i = interval(r);
        const double d = r - x_[i];
        const auto [a, b, c, e] = coeffs(i);
        return a + d * (b + d * (c + d * e));
    }
    double moment(double t) const override {
        if (t >= x_.back()) return cum_.back();
        const std::size_t i = interval(t);
        return cum_[i] + partial_moment(i, t - x_[i]);
    }
    double laplacian(double r) const override {
        if (r >= x_.back()) return 0.0;
        const std::size_t i = interval(r);
        const double d = r - x_[i];
        const auto [a, b, c, e] = coeffs(i);
        (void)a;
        const double d1 = b + d * (2.0 * c + 3.0 * d * e);
        const double d2 = 2.0 * c + 6.0 * d * e;
        if (r == 0.0) return 3.0 * d2;
        return d2 + 2.0 * d1 / r;
    }
    double fourier(double p) const override {
        double sum = 0.0;
        for (std::size_t i = 0; i + 1 < x_.size(); ++i) {
            sum += quad::integrate(
                [&](double r) {
                    const double pr = p * r;
                    const double sinc = std::abs(pr) < 1e-8 ? 1.0 - pr * pr / 6.0 : std::sin(pr) / pr;
                    return r * r * value(r) * sinc;
                },
                x_[i], x_[i + 1], 1e-13, 1e-12);
        }
        return 4.0 * kPi * sum * std::pow(2.0 * kPi, -1.5);
    }
    double support() const override { return x_.back(); }
    const std::vector<double>& nodes() const { return x_; }

private:
    std::size_t interval(double r) const {
        auto it = std::upper_bound(x_.begin(), x_.end(), r);
        std::size_t i = static_cast<std::size_t>(it - x_.begin());
        return i == 0 ? 0 : std::min(i - 1, x_.size() - 2);
    }
    std::array<double, 4> coeffs(std::size_t i) const {
        const double h = x_[i + 1] - x_[i];
        const double b = (y_[i + 1] - y_[i]) / h - h * (2.0 * m_[i] + m_[i + 1]) / 6.0;
        return {y_[i], b, 0.5 * m_[i], (m_[i + 1] - m_[i]) / (6.0 * h)};
    }
    // \int_{x_i}^{x_i + d} s S(s) ds
    double partial_moment(std::size_t i, double d) const {
        const auto [a, b, c, e] = coeffs(i);
        const double xi = x_[i];
        const double d2 = d * d, d3 = d2 * d, d4 = d3 * d, d5 = d4 * d;
        return xi * (a * d + b * d2 / 2 + c * d3 / 3 + e * d4 / 4) +
               (a * d2 / 2 + b * d3 / 3 + c * d4 / 4 + e * d5 / 5);
    }

    std::vector<double> x_, y_, m_, cum_;
};

bool same_grid(const GridPtr& a, const GridPtr& b) {
    if (a == b) return true;
    return a && b && a->r == b->r && a->w == b->w;
}

}  // namespace

Potential make_gaussian_potential(double amplitude, double sigma) {
    if (!(amplitude > 0 && sigma > 0)) throw DomainError("gaussian potential needs a > 0, sigma > 0");
    Potential v;
    std::ostringstream name;
    name << "gaussian:a=" << amplitude << ",sigma=" << sigma;
    v.name = name.str();
    v.profile = std::make_shared<GaussianProfile>(amplitude, sigma);
    v.v0 = amplitude;
    v.l1_norm = amplitude * std::pow(2.0 * kPi * sigma * sigma, 1.5);
    v.hessian_sup = amplitude / (sigma * sigma);
    return v;
}

Potential make_zero_potential() {
    Potential v;
    v.name = "zero";
    v.profile = std::make_shared<ZeroProfile>();
    return v;
}

Potential make_table_potential(std::vector<double> r, std::vector<double> vals, std::string name) {
    if (r.size() < 4 || r.size() != vals.size()) throw DomainError("table potential needs >= 4 (r, v) rows");
    if (r.front() != 0.0) throw DomainError("table potential must start at r = 0");
    for (std::size_t i = 1; i < r.size(); ++i)
        if (!(r[i] > r[i - 1])) throw DomainError("table radii must be strictly increasing");
    auto prof = std::make_shared<TableProfile>(r, vals);
    Potential v;
    v.name = std::move(name);
    v.profile = prof;
    v.v0 = vals.front();
    {
        double sum = 0.0;
        for (std::size_t i = 0; i + 1 < r.size(); ++i)
            sum += quad::integrate([&](double s) { return s * s * prof->value(s); }, r[i], r[i + 1], 1e-14, 1e-13);
        v.l1_norm = 4.0 * kPi * sum;
    }
    // curvature estimate on a fine uniform resampling: radial second difference
    // and the transverse term v'(r)/r
    const int n = 4000;
    const double R = r.back(), h = R / n;
    double hs = 0.0;
    for (int i = 0; i <= n; ++i) {
        const double x = i * h;
        const double xm = std::abs(x - h), xp = x + h;
        const double d2 = (prof->value(xp) - 2.0 * prof->value(x) + prof->value(xm)) / (h * h);
        const double d1 = (prof->value(xp) - prof->value(xm)) / (xp - (x - h));
        hs = std::max(hs, std::abs(d2));
        if (x > 0) hs = std::max(hs, std::abs(d1 / x));
    }
    v.hessian_sup = hs;
    return v;
}

Potential load_table_potential(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open potential table '" + path + "'");
    std::vector<double> r, v;
    std::string line;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        double a, b;
        if (!(ls >> a)) continue;
        if (!(ls >> b)) throw std::invalid_argument("malformed row in potential table '" + path + "'");
        r.push_back(a);
        v.push_back(b);
    }
    return make_table_potential(std::move(r), std::move(v), "table:" + path);
}

Potential parse_potential_spec(const std::string& spec) {
    if (spec == "zero" || spec == "none") return make_zero_potential();
    const auto colon = spec.find(':');
    const std::string kind = spec.substr(0, colon);
    const std::string rest = colon == std::string::npos ? "" : spec.substr(colon + 1);
    if (kind == "table") {
        if (rest.empty()) throw std::invalid_argument("table potential needs a path");
        return load_table_potential(rest);
    }
    if (kind == "gaussian") {
        double a = 1.0, sigma = 1.0;
        std::istringstream ss(rest);
        std::string item;
        while (std::getline(ss, item, ',')) {
            if (item.empty()) continue;
            const auto eq = item.find('=');
            if (eq == std::string::npos) throw std::invalid_argument("bad potential parameter '" + item + "'");
            const std::string key = item.substr(0, eq);
            double val;
            try {
                std::size_t used = 0;
                val = std::stod(item.substr(eq + 1), &used);
                if (used != item.size() - eq - 1) throw std::invalid_argument("trailing characters");
            } catch (const std::exception&) {
                throw std::invalid_argument("bad number in potential parameter '" + item + "'");
            }
            if (key == "a" || key == "amplitude") a = val;
            else if (key == "sigma" || key == "width") sigma = val;
            else throw std::invalid_argument("unknown gaussian parameter '" + key + "'");
        }
        if (!(a > 0 && sigma > 0)) throw std::invalid_argument("gaussian potential needs a > 0, sigma > 0");
        return make_gaussian_potential(a, sigma);
    }
    throw std::invalid_argument("unknown potential spec '" + spec + "'");
}

bool ValidationReport::ok() const {
    return std::all_of(checks.begin(), checks.end(), [](const ValidationCheck& c) { return c.pass; });
}

std::string ValidationReport::summary() const {
    std::ostringstream os;
    for (const auto& c : checks) os << c.name << ": " << (c.pass ? "pass" : "FAIL") << " (" << c.detail << ")\n";
    return os.str();
}

ValidationReport validate_assumption(const Potential& v, double omega) {
    ValidationReport rep;
    rep.omega = omega;
    // sampling range: table support, or where the profile has decayed
    double R = v.profile->support();
    if (!std::isfinite(R)) {
        R = 1.0;
        while (R < 1e6 && std::abs(v(R)) > 1e-16 * std::max(std::abs(v.v0), 1e-300)) R *= 2.0;
    }
    const int n = 4000;
    double vmin = 0.0;
    for (int i = 0; i <= n; ++i) vmin = std::min(vmin, v(R * i / n));
    {
        std::ostringstream d;
        d << "min sampled v = " << vmin;
        rep.checks.push_back({"nonnegative", vmin >= 0.0, d.str()});
    }
    {
        const double tail = std::isfinite(v.profile->support()) ? std::abs(v(R * (1 - 1e-9))) : 0.0;
        const bool ok = std::isfinite(v.l1_norm) && tail <= 1e-8 * std::max(std::abs(v.v0), 1e-300);
        std::ostringstream d;
        d << "int v = " << v.l1_norm << ", edge value " << tail;
        rep.checks.push_back({"integrable", ok, d.str()});
    }
    {
        const double f0 = std::abs(v.fourier(0.0));
        const double pmax = R > 0 ? 60.0 / R + 20.0 : 1.0;
        double fmin = 0.0;
        for (int i = 0; i <= 400; ++i) fmin = std::min(fmin, v.fourier(pmax * i / 400.0));
        std::ostringstream d;
        d << "min sampled vhat = " << fmin;
        // spline tables carry interpolation noise of order 1e-8 in vhat
        rep.checks.push_back({"positive_type", fmin >= -1e-6 * std::max(f0, 1e-300), d.str()});
    }
    {
        std::ostringstream d;
        d << "hessian_sup = " << v.hessian_sup << " vs omega^2/2 = " << 0.5 * omega * omega;
        rep.checks.push_back({"curvature_bound", v.hessian_sup < 0.5 * omega * omega, d.str()});
    }
    return rep;
}

double curvature_constant(const Potential& v, double lambda, double omega) {
    return 0.25 - lambda * v.hessian_sup / (2.0 * omega * omega);
}

void require_admissible(const Potential& v, double omega, double lambda) {
    if (!(lambda >= 0)) throw DomainError("lambda must be nonnegative");
    if (lambda == 0.0 || v.is_zero()) return;
    const ValidationReport rep = validate_assumption(v, omega);
    if (!rep.ok()) throw ValidationError("potential fails the interaction assumptions:\n" + rep.summary());
    if (!(curvature_constant(v, lambda, omega) > 0))
        throw ValidationError("lambda * hessian_sup must stay below omega^2/2");
}

ConvolutionOperator::ConvolutionOperator(const Potential& v, GridPtr grid) : v_(v), grid_(std::move(grid)) {
    const std::size_t n = grid_->size();
    kernel_.assign(n * n, 0.0);
    vgrid_.resize(n);
    const auto& r = grid_->r;
    const auto& w = grid_->w;
    const auto& prof = *v_.profile;
    kernels::parallel_for(static_cast<long>(n), [&](long ii) {
        const std::size_t i = static_cast<std::size_t>(ii);
        double* row = kernel_.data() + i * n;
        vgrid_[i] = prof.value(r[i]);
        if (v_.is_zero()) return;
        if (r[i] == 0.0) {
            for (std::size_t j = 0; j < n; ++j) row[j] = 4.0 * kPi * w[j] * r[j] * r[j] * prof.value(r[j]);
        } else {
            const double c = 2.0 * kPi / r[i];
            for (std::size_t j = 0; j < n; ++j) row[j] = w[j] == 0.0 ? 0.0 : c * w[j] * r[j] * prof.shell(r[i], r[j]);
        }
    });
}

std::vector<double> ConvolutionOperator::apply(const RadialDensity& rho, bool parallel) const {
    if (!same_grid(rho.grid, grid_)) throw PreconditionError("convolution: density grid does not match operator grid");
    const std::size_t n = grid_->size();
    std::vector<double> out(n, 0.0);
    if (parallel) kernels::matvec_parallel(kernel_.data(), rho.values.data(), out.data(), n, n);
    else kernels::matvec_serial(kernel_.data(), rho.values.data(), out.data(), n, n);
    if (rho.point_mass != 0.0)
        for (std::size_t i = 0; i < n; ++i) out[i] += rho.point_mass * vgrid_[i];
    return out;
}

double ConvolutionOperator::at(const RadialDensity& rho, double r) const {
    return radial_convolution_at(v_, rho, r);
}

std::vector<double> radial_convolution(const Potential& v, const RadialDensity& rho) {
    ConvolutionOperator op(v, rho.grid);
    return op.apply(rho);
}

double radial_convolution_at(const Potential& v, const RadialDensity& rho, double r) {
    const auto& g = *rho.grid;
    const auto& prof = *v.profile;
    double s = 0.0;
    if (r == 0.0) {
        for (std::size_t j = 0; j < g.size(); ++j) s += g.w[j] * g.r[j] * g.r[j] * prof.value(g.r[j]) * rho.values[j];
        s *= 4.0 * kPi;
    } else {
        for (std::size_t j = 0; j < g.size(); ++j)
            if (g.w[j] != 0.0) s += g.w[j] * g.r[j] * prof.shell(r, g.r[j]) * rho.values[j];
        s *= 2.0 * kPi / r;
    }
    if (!std::isfinite(s)) throw QuadratureError("radial convolution produced a non-finite value");
    return s + rho.point_mass * prof.value(r);
}

double interaction_energy(const RadialDensity& rho1, const RadialDensity& rho2, const ConvolutionOperator& op) {
    if (!same_grid(rho1.grid, rho2.grid)) throw PreconditionError("interaction_energy: grids differ");
    RadialDensity th1{rho1.grid, rho1.values, 0.0}, th2{rho2.grid, rho2.values, 0.0};
    const auto c2 = op.apply(th2);
    const auto c1 = op.apply(th1);
    const double v0 = op.potential().v0;
    std::size_t origin = 0;  // grids carry the origin as node 0
    double cross = 0.0;
    const auto& g = *rho1.grid;
    for (std::size_t i = 0; i < g.size(); ++i) cross += g.w[i] * g.r[i] * g.r[i] * rho1.values[i] * c2[i];
    cross *= 4.0 * kPi;
    return 0.5 * (rho1.point_mass * rho2.point_mass * v0 + rho1.point_mass * c2[origin] +
                  rho2.point_mass * c1[origin] + cross);
}

double interaction_energy(const RadialDensity& rho1, const RadialDensity& rho2, const Potential& v) {
    ConvolutionOperator op(v, rho1.grid);
    return interaction_energy(rho1, rho2, op);
}

}  // namespace bosegas
