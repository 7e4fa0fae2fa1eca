#pragma once

#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "duct/flow.hpp"
#include "duct/grid.hpp"
#include "duct/linearization.hpp"

namespace duct {

// Characteristic slope dY/dx = v/u.
using Slope = std::function<double(double x, double y)>;

// Backward characteristics through every grid node.
struct CharacteristicMap {
    Grid grid;
    // paths[i](k, j): ordinate at x_k of the characteristic through (x_i, y_j), k <= i.
    std::vector<Eigen::MatrixXd> paths;
    Field xi;      // inlet foot point
    int clamped = 0;
};

// Single characteristic from (x, y) back to x = x_end.
double trace_point(const Slope& w, double x, double y, double x_end, double tol = 1e-11);

CharacteristicMap trace_characteristics(const Slope& w, const Grid& grid, double tol = 1e-11);
// Slope from nodal u, v through bilinear interpolation.
CharacteristicMap trace_characteristics(const Field& u, const Field& v, const Grid& grid, double tol = 1e-11);

Slope bilinear_slope(const Field& u, const Field& v, const Grid& grid);

struct TransportSolution {
    Field E, A;
};

using InletPair = std::function<Eigen::Vector2d(double y)>;

// (E, A)(x, y) = Phi(x) [ inlet(xi) + int_0^x Phi^{-1}(s) (sE, sA)(s, Y(s)) ds ] along the map.
TransportSolution solve_cauchy_system(const CharacteristicMap& map, const std::vector<DerivedCoeffs>& derived,
                                      const Field& sE, const Field& sA, const InletPair& inlet);

// Linearized enthalpy/entropy problem: generator lambda [[a1,a2],[b1,b2]],
// source lambda (a3, b3) p_hat + (F_E, F_A) along the given characteristics.
TransportSolution solve_enthalpy_entropy(const CharacteristicMap& map, const Field& p_hat, const Field& F_E,
                                         const Field& F_A, const CoeffTables& ct, const InletPair& inlet);
TransportSolution solve_enthalpy_entropy(const FlowField& U, const Field& p_hat, const Field& F_E, const Field& F_A,
                                         const CoeffTables& ct, const InletPair& inlet);

}  // namespace duct
