#include "duct/grid.hpp"

namespace duct {

std::vector<double> Grid::xs() const {
    std::vector<double> v(nx);
    for (int i = 0; i < nx; ++i) v[i] = x(i);
    return v;
}

std::vector<double> Grid::ys() const {
    std::vector<double> v(ny);
    for (int j = 0; j < ny; ++j) v[j] = y(j);
    return v;
}

Eigen::VectorXd diff1(const Eigen::VectorXd& f, double h) {
    const Eigen::Index n = f.size();
    Eigen::VectorXd d(n);
    for (Eigen::Index i = 1; i + 1 < n; ++i) d(i) = (f(i + 1) - f(i - 1)) / (2 * h);
    if (n >= 5) {
        // Centered stencil on a quartic ghost value: the error term matches the interior one.
        d(0) = (-5 * f(0) + 11 * f(1) - 10 * f(2) + 5 * f(3) - f(4)) / (2 * h);
        d(n - 1) = (5 * f(n - 1) - 11 * f(n - 2) + 10 * f(n - 3) - 5 * f(n - 4) + f(n - 5)) / (2 * h);
    } else {
        d(0) = (-3 * f(0) + 4 * f(1) - f(2)) / (2 * h);
        d(n - 1) = (3 * f(n - 1) - 4 * f(n - 2) + f(n - 3)) / (2 * h);
    }
    return d;
}

Eigen::VectorXd diff2(const Eigen::VectorXd& f, double h) {
    const Eigen::Index n = f.size();
    Eigen::VectorXd d(n);
    const double h2 = h * h;
    for (Eigen::Index i = 1; i + 1 < n; ++i) d(i) = (f(i + 1) - 2 * f(i) + f(i - 1)) / h2;
    if (n >= 5) {
        d(0) = (3 * f(0) - 9 * f(1) + 10 * f(2) - 5 * f(3) + f(4)) / h2;
        d(n - 1) = (3 * f(n - 1) - 9 * f(n - 2) + 10 * f(n - 3) - 5 * f(n - 4) + f(n - 5)) / h2;
    } else {
        d(0) = (2 * f(0) - 5 * f(1) + 4 * f(2) - f(3)) / h2;
        d(n - 1) = (2 * f(n - 1) - 5 * f(n - 2) + 4 * f(n - 3) - f(n - 4)) / h2;
    }
    return d;
}

Field d_dx(const Field& f, double h) {
    Field d(f.rows(), f.cols());
    for (Eigen::Index j = 0; j < f.cols(); ++j) d.col(j) = diff1(f.col(j), h);
    return d;
}

Field d_dy(const Field& f, double h) {
    Field d(f.rows(), f.cols());
    for (Eigen::Index i = 0; i < f.rows(); ++i) d.row(i) = diff1(f.row(i).transpose(), h).transpose();
    return d;
}

Field d2_dx2(const Field& f, double h) {
    Field d(f.rows(), f.cols());
    for (Eigen::Index j = 0; j < f.cols(); ++j) d.col(j) = diff2(f.col(j), h);
    return d;
}

Field d2_dy2(const Field& f, double h) {
    Field d(f.rows(), f.cols());
    for (Eigen::Index i = 0; i < f.rows(); ++i) d.row(i) = diff2(f.row(i).transpose(), h).transpose();
    return d;
}

Field d2_dxdy(const Field& f, double hx, double hy) { return d_dy(d_dx(f, hx), hy); }

double trapezoid(const Eigen::VectorXd& f, double h) {
    const Eigen::Index n = f.size();
    return h * (f.sum() - 0.5 * (f(0) + f(n - 1)));
}

Eigen::VectorXd integrate_y(const Field& f, double dy) {
    Eigen::VectorXd s(f.rows());
    for (Eigen::Index i = 0; i < f.rows(); ++i) s(i) = trapezoid(f.row(i).transpose(), dy);
    return s;
}

Eigen::VectorXd cumulative(const Eigen::VectorXd& f, double h) {
    Eigen::VectorXd c(f.size());
    c(0) = 0.0;
    for (Eigen::Index i = 1; i < f.size(); ++i) c(i) = c(i - 1) + 0.5 * h * (f(i) + f(i - 1));
    return c;
}

double sup(const Field& f) { return f.size() ? f.cwiseAbs().maxCoeff() : 0.0; }

}  // namespace duct
