#pragma once

#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "duct/linearization.hpp"

namespace duct {

using Mat4 = Eigen::Matrix4d;
using Vec4 = Eigen::Vector4d;

// Augmented first-order form of the mode-m integro-differential equation.
// State z = (int b4 p, int a4 p, p, p').
struct ModeSystem {
    int m = 0;
    const CoeffTables* coeffs = nullptr;

    Mat4 A(const ModeSample& s) const;
    Mat4 A_at(double x) const { return A(coeffs->interpolate(x)); }
    Mat4 B() const;
    Mat4 C() const;
    // Growth rate bound used to size multiple-shooting segments.
    double growth_rate() const;
};

ModeSystem assemble_mode_matrix(int m, const CoeffTables& coeffs);

struct Fundamental {
    Mat4 scaled;       // Psi(l) / exp(log_scale)
    double log_scale;  // log of the factor stripped from the product
    int segments;
    Mat4 value() const;
};

// Adaptive integration of Psi' = A Psi, Psi(0) = I, segmented for large growth.
Fundamental fundamental_4x4(const ModeSystem& sys, double tol = 1e-10);
// Unsegmented adaptive values at the requested points.
std::vector<Mat4> fundamental_4x4_at(const ModeSystem& sys, const std::vector<double>& xs, double tol = 1e-10);
// Fixed-step RK4 reference on [0, x_end].
Mat4 fundamental_4x4_fixed(const ModeSystem& sys, double x_end, int n);

struct ChiValue {
    double chi;       // may overflow to +-inf only for extreme m l
    double scaled;    // chi / ||Psi(l)||
    double psi_norm;  // ||Psi(l)||
    bool usable;
};

ChiValue chi_info(const ModeSystem& sys);
double chi(int m, const CoeffTables& coeffs);

struct ModeSolution {
    int m = 0;
    Eigen::VectorXd p;            // P3 on the x-grid
    Eigen::Matrix<double, Eigen::Dynamic, 4> z;  // full augmented state on the x-grid
    double chi = 0.0;
    int segments = 1;
};

using ScalarFn = std::function<double(double)>;

// Two-point problem: e1 p'' + e2 p' + e3 p + e4 int a4 p + e5 int b4 p = h,
// p'(0) + lambda gamma0 p(0) = g0, p(l) = gl.
ModeSolution solve_mode_bvp(int m, const ScalarFn& h, double g0, double gl, const CoeffTables& coeffs);
// Same with h sampled on the fine integration grid.
ModeSolution solve_mode_bvp_sampled(int m, const std::vector<double>& h_fine, double g0, double gl,
                                    const CoeffTables& coeffs);

// Defect of the integro-differential equation per unit length on each x interval,
// Volterra terms from Gauss-Legendre quadrature of the Hermite interpolant of p.
double mode_defect(const ModeSolution& sol, const ScalarFn& h, const CoeffTables& coeffs);

struct SConditionRoot {
    int m;
    double lambda;
};

struct SConditionReport {
    std::vector<int> modes;
    std::vector<double> lambdas;
    std::vector<std::vector<double>> chi;  // [mode][lambda index]; NaN where l >= l*
    std::vector<double> min_abs_chi;
    std::vector<SConditionRoot> roots;
    double margin = 0.0;  // min over modes of |chi| (scaled) at the configured lambda
    bool holds = false;
};

SConditionReport scan_scondition(const InletSpec& inlet, const GasParams& gas, double l, int n_x, int m_max,
                                 double lambda_min, double lambda_max, int steps);

}  // namespace duct
