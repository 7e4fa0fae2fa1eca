#pragma once

#include <array>
#include <vector>

#include <Eigen/Dense>

#include "duct/background.hpp"

namespace duct {

using Mat2 = Eigen::Matrix2d;

// Pointwise linearization coefficients at one background state.
// a, b are stored so that D'E = lambda(a1 E + a2 A + a3 p) and
// D'A = lambda(b1 E + b2 A + b3 p) hold for the perturbations.
struct LocalCoeffs {
    double a1, a2, a3;
    double b1, b2, b3;
    double c1, c2, c3, c4;
    std::array<double, 10> d;  // d[1]..d[9]
    std::array<double, 10> e;  // e[1]..e[9]
};

LocalCoeffs local_coeffs(const BgPoint& b, double gamma, double lambda);
double robin_gamma0(const BgPoint& inlet_point, double gamma);

// Coefficients after elimination of the transported perturbations.
struct DerivedCoeffs {
    Mat2 Phi, Phi_inv;
    double a4, b4;
    double e10, e11, e12, e13;
};

DerivedCoeffs derive(const LocalCoeffs& c, const Mat2& Phi);

struct TildeE {
    double e1, e2, e3, e4, e5;
};

// Mode-m coefficient five-tuple (m = 0 carries the cross-section averages).
TildeE tilde_e(const LocalCoeffs& c, const DerivedCoeffs& dc, int m, double lambda);

// Samples used by the modal integrator.
struct ModeSample {
    double x;
    LocalCoeffs c;
    DerivedCoeffs dc;
};

class CoeffTables {
public:
    CoeffTables(const Background& bg, const BackgroundProfile& prof, int refine = 2);

    double gamma() const { return gamma_; }
    double lambda() const { return lambda_; }
    double gamma0() const { return gamma0_; }
    int n_x() const { return int(local.size()); }
    double length() const { return prof_.l; }
    int refine() const { return refine_; }
    const BackgroundProfile& profile() const { return prof_; }

    // Nodal tables on the x-grid.
    std::vector<LocalCoeffs> local;
    std::vector<DerivedCoeffs> derived;
    // Samples on the fine grid with spacing dx / (2 refine).
    std::vector<ModeSample> fine;

    // Smooth interpolant between nodes: cubic Hermite background and Phi.
    ModeSample interpolate(double x) const;
    // Direct evaluation at an arbitrary x (adaptive Phi integration).
    ModeSample evaluate(double x) const;

private:
    double gamma_, lambda_, gamma0_;
    int refine_;
    BackgroundProfile prof_;
    Background bg_;
};

// Phi' = lambda G(x) Phi with Phi(0) = I, adaptive integration to the requested x values.
std::vector<Mat2> fundamental_2x2(const Background& bg, const std::vector<double>& xs, double tol = 1e-12);
// Fourth-order fixed-step reference with n steps over [0, x_end].
Mat2 fundamental_2x2_fixed(const Background& bg, double x_end, int n);

}  // namespace duct
