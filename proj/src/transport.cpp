#include "duct/transport.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <boost/numeric/odeint.hpp>

#include "duct/error.hpp"
#include "duct/parallel.hpp"

namespace duct {

namespace {

namespace ode = boost::numeric::odeint;
using State = std::vector<double>;
constexpr double kPi = std::numbers::pi;

double clamp_y(double y, int& hits) {
    if (y < 0.0) {
        ++hits;
        return 0.0;
    }
    if (y > kPi) {
        ++hits;
        return kPi;
    }
    return y;
}

double lerp_row(const Field& f, int k, double y, double dy, int ny) {
    double t = y / dy;
    int j = std::clamp(int(std::floor(t)), 0, ny - 2);
    double s = t - j;
    return (1.0 - s) * f(k, j) + s * f(k, j + 1);
}

}  // namespace

double trace_point(const Slope& w, double x, double y, double x_end, double tol) {
    if (x == x_end) return y;
    auto rhs = [&](const double& Y, double& dY, double t) { dY = w(t, Y); };
    double Y = y;
    double h = (x_end - x) / 16;
    ode::integrate_adaptive(ode::make_controlled<ode::runge_kutta_dopri5<double>>(tol, tol), rhs, Y, x, x_end, h);
    return std::clamp(Y, 0.0, kPi);
}

Slope bilinear_slope(const Field& u, const Field& v, const Grid& grid) {
    Field w = v.cwiseQuotient(u);
    const double dx = grid.dx(), dy = grid.dy();
    const int nx = grid.nx, ny = grid.ny;
    return [w, dx, dy, nx, ny](double x, double y) {
        double tx = x / dx, ty = y / dy;
        int i = std::clamp(int(std::floor(tx)), 0, nx - 2);
        int j = std::clamp(int(std::floor(ty)), 0, ny - 2);
        double sx = tx - i, sy = ty - j;
        return (1 - sx) * ((1 - sy) * w(i, j) + sy * w(i, j + 1)) +
               sx * ((1 - sy) * w(i + 1, j) + sy * w(i + 1, j + 1));
    };
}

CharacteristicMap trace_characteristics(const Slope& w, const Grid& grid, double tol) {
    const int nx = grid.nx, ny = grid.ny;
    CharacteristicMap map;
    map.grid = grid;
    map.paths.resize(nx);
    map.xi.resize(nx, ny);
    std::vector<int> hits(nx, 0);
    parallel_for(nx, [&](int i) {
        Eigen::MatrixXd P(i + 1, ny);
        State Y(ny);
        for (int j = 0; j < ny; ++j) Y[j] = grid.y(j);
        P.row(i) = Eigen::Map<Eigen::RowVectorXd>(Y.data(), ny);
        auto rhs = [&](const State& s, State& ds, double t) {
            for (int j = 0; j < ny; ++j) ds[j] = w(t, s[j]);
        };
        auto stepper = ode::make_controlled<ode::runge_kutta_dopri5<State>>(tol, tol);
        for (int k = i; k > 0; --k) {
            double h = -grid.dx() / 2;
            ode::integrate_adaptive(stepper, rhs, Y, grid.x(k), grid.x(k - 1), h);
            for (int j = 0; j < ny; ++j) Y[j] = clamp_y(Y[j], hits[i]);
            P.row(k - 1) = Eigen::Map<Eigen::RowVectorXd>(Y.data(), ny);
        }
        map.xi.row(i) = P.row(0);
        map.paths[i] = std::move(P);
    });
    for (int h : hits) map.clamped += h;
    return map;
}

CharacteristicMap trace_characteristics(const Field& u, const Field& v, const Grid& grid, double tol) {
    if (u.minCoeff() <= 0.0) throw domain_error("characteristics need u > 0");
    return trace_characteristics(bilinear_slope(u, v, grid), grid, tol);
}

TransportSolution solve_cauchy_system(const CharacteristicMap& map, const std::vector<DerivedCoeffs>& derived,
                                      const Field& sE, const Field& sA, const InletPair& inlet) {
    const Grid& g = map.grid;
    const int nx = g.nx, ny = g.ny;
    if (int(derived.size()) != nx) throw domain_error("coefficient table does not match the grid");
    const double dx = g.dx(), dy = g.dy();
    TransportSolution out{g.zeros(), g.zeros()};
    parallel_for(nx, [&](int i) {
        const Eigen::MatrixXd& P = map.paths[i];
        for (int j = 0; j < ny; ++j) {
            Eigen::Vector2d acc = inlet(map.xi(i, j));
            for (int k = 0; k <= i && i > 0; ++k) {
                double wk = (k == 0 || k == i) ? 0.5 * dx : dx;
                double y = P(k, j);
                Eigen::Vector2d s(lerp_row(sE, k, y, dy, ny), lerp_row(sA, k, y, dy, ny));
                acc += wk * (derived[k].Phi_inv * s);
            }
            Eigen::Vector2d r = derived[i].Phi * acc;
            out.E(i, j) = r(0);
            out.A(i, j) = r(1);
        }
    });
    return out;
}

TransportSolution solve_enthalpy_entropy(const CharacteristicMap& map, const Field& p_hat, const Field& F_E,
                                         const Field& F_A, const CoeffTables& ct, const InletPair& inlet) {
    Field sE = F_E, sA = F_A;
    const double lam = ct.lambda();
    for (int i = 0; i < map.grid.nx; ++i) {
        sE.row(i) += lam * ct.local[i].a3 * p_hat.row(i);
        sA.row(i) += lam * ct.local[i].b3 * p_hat.row(i);
    }
    return solve_cauchy_system(map, ct.derived, sE, sA, inlet);
}

TransportSolution solve_enthalpy_entropy(const FlowField& U, const Field& p_hat, const Field& F_E, const Field& F_A,
                                         const CoeffTables& ct, const InletPair& inlet) {
    return solve_enthalpy_entropy(trace_characteristics(U.u, U.v, U.grid), p_hat, F_E, F_A, ct, inlet);
}

}  // namespace duct
