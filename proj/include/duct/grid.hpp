#pragma once

#include <numbers>
#include <vector>

#include <Eigen/Dense>

namespace duct {

// Rows index x, columns index y.
using Field = Eigen::MatrixXd;

struct Grid {
    int nx = 0, ny = 0;
    double l = 0.0;

    Grid() = default;
    Grid(double length, int n_x, int n_y) : nx(n_x), ny(n_y), l(length) {}
    double dx() const { return l / (nx - 1); }
    double dy() const { return std::numbers::pi / (ny - 1); }
    double x(int i) const { return l * i / (nx - 1); }
    double y(int j) const { return std::numbers::pi * j / (ny - 1); }
    std::vector<double> xs() const;
    std::vector<double> ys() const;
    Field zeros() const { return Field::Zero(nx, ny); }
};

// Second-order stencils: centered inside, one-sided at the ends.
Eigen::VectorXd diff1(const Eigen::VectorXd& f, double h);
Eigen::VectorXd diff2(const Eigen::VectorXd& f, double h);
Field d_dx(const Field& f, double h);
Field d_dy(const Field& f, double h);
Field d2_dx2(const Field& f, double h);
Field d2_dy2(const Field& f, double h);
Field d2_dxdy(const Field& f, double hx, double hy);

// Trapezoid integral over y for each x row.
Eigen::VectorXd integrate_y(const Field& f, double dy);
double trapezoid(const Eigen::VectorXd& f, double h);
// Running trapezoid integral from the first sample.
Eigen::VectorXd cumulative(const Eigen::VectorXd& f, double h);

double sup(const Field& f);

}  // namespace duct
