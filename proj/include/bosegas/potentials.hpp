#pragma once

#include <memory>
#include <string>
#include <vector>

#include "bosegas/quadrature.hpp"

namespace bosegas {

using quad::GridPtr;
using quad::RadialGrid;

// Radial profile r -> v(r). Implementations supply the pieces the solvers need.
class PotentialProfile {
public:
    virtual ~PotentialProfile() = default;
    virtual double value(double r) const = 0;
    // \int_0^t s v(s) ds
    virtual double moment(double t) const = 0;
    // \int_{|r-s|}^{r+s} t v(t) dt
    virtual double shell(double r, double s) const { return moment(r + s) - moment(std::abs(r - s)); }
    // Laplacian of x -> v(|x|)
    virtual double laplacian(double r) const = 0;
    // (2pi)^{-3/2} \int v(x) e^{-ipx} dx
    virtual double fourier(double p) const = 0;
    // radius beyond which v is treated as zero (infinity if none)
    virtual double support() const = 0;
};

struct Potential {
    std::string name;
    std::shared_ptr<const PotentialProfile> profile;
    double v0 = 0;           // v(0)
    double l1_norm = 0;      // \int v
    double hessian_sup = 0;  // sup_x |D^2 v(x)|, exact for built-ins, estimated for tables

    double operator()(double r) const { return profile->value(r); }
    double fourier(double p) const { return profile->fourier(p); }
    bool is_zero() const { return v0 == 0 && l1_norm == 0; }
};

Potential make_gaussian_potential(double amplitude, double sigma);
Potential make_zero_potential();
// Natural cubic spline through (r_i, v_i) with v'(0) = 0; requires r_0 = 0.
Potential make_table_potential(std::vector<double> r, std::vector<double> v, std::string name = "table");
// Two whitespace-separated columns (r, v); '#' starts a comment.
Potential load_table_potential(const std::string& path);
// "gaussian:a=1,sigma=1", "zero", "table:<path>"
Potential parse_potential_spec(const std::string& spec);

struct ValidationCheck {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct ValidationReport {
    double omega = 0;
    std::vector<ValidationCheck> checks;
    bool ok() const;
    std::string summary() const;
};

// Nonnegativity, integrability, nonnegative Fourier transform and the strict
// curvature bound hessian_sup < omega^2/2.
ValidationReport validate_assumption(const Potential& v, double omega);

// c = 1/4 - lambda*hessian_sup/(2 omega^2): lower curvature constant of the
// effective trap omega^2 r^2/4 + lambda (v*rho)(r) - lambda (v*rho)(0).
double curvature_constant(const Potential& v, double lambda, double omega);

// Throws ValidationError unless v passes validate_assumption and the coupled curvature
// constant stays positive. Nothing is checked at lambda = 0.
void require_admissible(const Potential& v, double omega, double lambda);

struct RadialDensity {
    GridPtr grid;
    std::vector<double> values;  // thermal part on grid->r
    double point_mass = 0;       // weight of the delta at the origin

    double thermal_mass() const { return grid->integrate_3d(values); }
    double mass() const { return thermal_mass() + point_mass; }
};

// Convolution with v on a fixed grid. The kernel matrix is assembled once, so
// repeated application during fixed-point iterations is a matrix-vector product.
class ConvolutionOperator {
public:
    ConvolutionOperator(const Potential& v, GridPtr grid);
    // (v * rho)(r_i) on the grid, including g v(r_i)
    std::vector<double> apply(const RadialDensity& rho, bool parallel = true) const;
    // (v * rho)(r) at an arbitrary radius
    double at(const RadialDensity& rho, double r) const;
    const Potential& potential() const { return v_; }
    const GridPtr& grid() const { return grid_; }

private:
    Potential v_;
    GridPtr grid_;
    std::vector<double> kernel_;  // row-major n x n
    std::vector<double> vgrid_;   // v(r_i)
};

std::vector<double> radial_convolution(const Potential& v, const RadialDensity& rho);
double radial_convolution_at(const Potential& v, const RadialDensity& rho, double r);

// D(rho1, rho2) = 1/2 \int\int v(x-y) drho1 drho2, point masses included.
double interaction_energy(const RadialDensity& rho1, const RadialDensity& rho2, const Potential& v);
double interaction_energy(const RadialDensity& rho1, const RadialDensity& rho2,
                          const ConvolutionOperator& op);

}  // namespace bosegas
