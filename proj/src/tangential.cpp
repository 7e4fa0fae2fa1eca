#include "duct/tangential.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "duct/error.hpp"

namespace duct {

namespace {
constexpr double kPi = std::numbers::pi;
}

double compatibility_defect(const Eigen::VectorXd& f, double g_minus, double g_plus) {
    double dy = kPi / (f.size() - 1);
    return trapezoid(f, dy) - (g_plus - g_minus);
}

Eigen::VectorXd solve_crosssection_bvp(const Eigen::VectorXd& f, double g_minus, double g_plus, double tol) {
    double delta = compatibility_defect(f, g_minus, g_plus);
    double scale = 1.0 + f.cwiseAbs().maxCoeff();
    if (std::abs(delta) > tol * scale) {
        std::ostringstream os;
        os << "cross-section data incompatible, defect " << delta;
        throw numerical_error(os.str());
    }
    double dy = kPi / (f.size() - 1);
    Eigen::VectorXd v = cumulative(f, dy).array() + g_minus;
    v(v.size() - 1) = g_plus;
    return v;
}

Field v_linear_part(const Field& px, const Field& p, const Field& E, const Field& A,
                    const std::vector<LocalCoeffs>& c) {
    Field r(p.rows(), p.cols());
    for (int i = 0; i < p.rows(); ++i)
        r.row(i) = c[i].c1 * px.row(i) + c[i].c2 * p.row(i) + c[i].c3 * E.row(i) + c[i].c4 * A.row(i);
    return r;
}

Eigen::VectorXd compute_k(const Field& px, const Field& p, const Field& E, const Field& A, const Field& F_v,
                          const std::vector<LocalCoeffs>& c, const Grid& grid) {
    Field f = v_linear_part(px, p, E, A, c) + F_v;
    return integrate_y(f, grid.dy()) / kPi;
}

Field subtract_mean_y(const Field& f, const Grid& grid) {
    Eigen::VectorXd mean = integrate_y(f, grid.dy()) / kPi;
    return f.colwise() - mean;
}

Field assemble_v_rhs(const Field& px, const Field& p, const Field& E, const Field& A, const Field& F_v,
                     const std::vector<LocalCoeffs>& c, const Grid& grid) {
    return subtract_mean_y(v_linear_part(px, p, E, A, c), grid) + subtract_mean_y(F_v, grid);
}

}  // namespace duct
