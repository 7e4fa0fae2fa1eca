#pragma once

#include <vector>

#include <Eigen/Dense>

#include "duct/grid.hpp"
#include "duct/linearization.hpp"

namespace duct {

// int_0^pi f dy - (g_plus - g_minus), trapezoid on the y-grid.
double compatibility_defect(const Eigen::VectorXd& f, double g_minus, double g_plus);

// v(y) = g_minus + int_0^y f; throws a numerical error carrying the defect when incompatible.
Eigen::VectorXd solve_crosssection_bvp(const Eigen::VectorXd& f, double g_minus, double g_plus = 0.0,
                                       double tol = 1e-8);

// k(x) = (1/pi) int [c1 px + c2 p + c3 E + c4 A + F_v] dy.
Eigen::VectorXd compute_k(const Field& px, const Field& p, const Field& E, const Field& A, const Field& F_v,
                          const std::vector<LocalCoeffs>& c, const Grid& grid);

// Linear part c1 px + c2 p + c3 E + c4 A.
Field v_linear_part(const Field& px, const Field& p, const Field& E, const Field& A,
                    const std::vector<LocalCoeffs>& c);

// Linear part minus its y-average plus F_v minus its y-average.
Field assemble_v_rhs(const Field& px, const Field& p, const Field& E, const Field& A, const Field& F_v,
                     const std::vector<LocalCoeffs>& c, const Grid& grid);

// Row-wise subtraction of the cross-section mean.
Field subtract_mean_y(const Field& f, const Grid& grid);

}  // namespace duct
