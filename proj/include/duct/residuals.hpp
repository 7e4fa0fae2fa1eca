#pragma once

#include <cmath>

#include "duct/background.hpp"
#include "duct/flow.hpp"
#include "duct/gas.hpp"
#include "duct/grid.hpp"

namespace duct {

// Pointwise values and derivatives of the unknowns.
template <class T>
struct Jet {
    T p, px, pxx, py, pyy, pxy;
    T E, Ey, A, Ay;
    T v, vx, vy;
    T m, mx, my;
};

template <class T>
struct JetState {
    T rho, c2, u, M2, uy, rhoy;
};

template <class T>
JetState<T> jet_state(const Jet<T>& J, double g) {
    using std::pow;
    using std::sqrt;
    JetState<T> s;
    s.rho = pow(J.p / J.A, 1.0 / g);
    s.c2 = g * J.p / s.rho;
    s.u = sqrt(2.0 * J.E - J.v * J.v - 2.0 * s.c2 / (g - 1.0));
    s.M2 = (s.u * s.u + J.v * J.v) / s.c2;
    s.uy = (J.Ey - J.v * J.vy - J.py / s.rho - pow(s.rho, g - 1.0) * J.Ay / (g - 1.0)) / s.u;
    s.rhoy = s.rho / g * (J.py / J.p - J.Ay / J.A);
    return s;
}

// Right-hand side of the tangential equation without k.
template <class T>
T tangential_source(const Jet<T>& J, double g, double lam) {
    auto s = jet_state(J, g);
    return -(s.u * J.px + J.v * J.py) / (g * J.p) + lam * J.m * (1.0 + 0.5 * (g - 1.0) * s.M2) +
           (J.v * s.uy + J.px / s.rho) / s.u;
}

// Second-order pressure equation with normal derivatives replaced through the transport,
// tangential and normal momentum equations.
template <class T>
T pressure_operator(const Jet<T>& J, T k, double g, double lam) {
    using std::pow;
    auto s = jet_state(J, g);
    const T &u = s.u, &rho = s.rho, &c2 = s.c2, &M2 = s.M2, &uy = s.uy;
    const T &p = J.p, &px = J.px, &py = J.py, &v = J.v, &vx = J.vx, &vy = J.vy, &m = J.m;
    T RV = tangential_source(J, g, lam);
    T ux = -px / (rho * u) - lam * m - v / (u * u) * J.Ey + v * pow(rho, g - 1.0) / ((g - 1.0) * u * u) * J.Ay -
           v / u * vx - lam * m * v * v / (u * u);
    T rx = px / c2 + lam * m * rho / u * (1.0 - 0.5 * (g - 1.0) * M2) + v * pow(rho, g) / (u * c2) * J.Ay;
    T vy_r = RV - k;
    T c2x = g * px / rho - c2 * rx / rho;
    T M2x = (2.0 * u * ux + 2.0 * v * vx) / c2 - M2 * c2x / c2;
    T c2y = g * py / rho - c2 * s.rhoy / rho;
    T M2y = (2.0 * u * uy + 2.0 * v * vy) / c2 - M2 * c2y / c2;
    T gp = g * p;
    T C1 = (u * vx * py + v * uy * px + v * vy * py) / gp - 2.0 * u * v / (gp * p) * px * py -
           v * v / (gp * p) * py * py;
    T C2 = -s.rhoy * py / (rho * rho);
    T C3 = 2.0 * uy * vx + vy * vy;
    T C4 = v * (J.my * M2 + m * M2y);
    T C5 = v * J.my;
    return (u * u - c2) / gp * J.pxx + (v * v - c2) / gp * J.pyy + 2.0 * u * v / gp * J.pxy -
           u * u / (gp * p) * px * px + (u * ux + c2 / rho * rx) / gp * px - ux * ux -
           lam * ((g - 1.0) * M2 + 2.0) / 2.0 * u * J.mx - lam * (g - 1.0) * u * m / 2.0 * M2x - lam * m * ux -
           lam * m * vy_r + C1 - C2 - C3 - lam * (g - 1.0) / 2.0 * C4 - lam * C5;
}

// Inlet remainder rho u (v_y - RV) / (u^2/c^2 - 1).
template <class T>
T inlet_remainder(const Jet<T>& J, double g, double lam) {
    auto s = jet_state(J, g);
    return s.rho * s.u * (J.vy - tangential_source(J, g, lam)) / (s.u * s.u / s.c2 - 1.0);
}

// Transport right-hand sides for d_x + (v/u) d_y acting on E and A.
inline double transport_rhs_E(double E, double u, double m, double lam) { return -lam * m * E / u; }
inline double transport_rhs_A(double A, double u, double M2, double m, double g, double lam) {
    return -lam * g * m * (1.0 - 0.5 * (g - 1.0) * M2) * A / u;
}

struct JetFields {
    Field p, px, pxx, py, pyy, pxy;
    Field E, Ex, Ey, A, Ax, Ay;
    Field v, vx, vy;
    Field m, mx, my;
    Jet<double> at(int i, int j) const {
        return {p(i, j),  px(i, j), pxx(i, j), py(i, j), pyy(i, j), pxy(i, j), E(i, j), Ey(i, j),
                A(i, j),  Ay(i, j), v(i, j),   vx(i, j), vy(i, j),  m(i, j),   mx(i, j), my(i, j)};
    }
};

// Finite-difference jets. With a profile the x-derivatives are split into the exact
// background derivative plus differences of the perturbation.
JetFields make_jets(const FlowField& U, const GasParams& gas, const BackgroundProfile* prof = nullptr);

struct EulerResiduals {
    double mass, momx, momy, energy;
    double max() const;
};

// Conservation-form residuals by plain centered differences.
EulerResiduals euler_residuals(const FlowField& U, const GasParams& gas);

struct DecompositionResiduals {
    double transport_E, transport_A, pressure, tangential;
    double k_norm;
    double inlet_E, inlet_A, inlet_v, outlet_p, wall_v;
};

DecompositionResiduals decomposition_residuals(const FlowField& U, const GasParams& gas, const BackgroundProfile& prof,
                                               const BoundaryData& bd);

// One-sided wall derivative of order k against the interior truncation scale.
struct WallCheck {
    double value, truncation, roundoff;
    bool ok() const { return value <= 10.0 * truncation + roundoff; }
};

WallCheck wall_derivative_check(const Field& f, int order, const Grid& grid);

struct SymmetryReport {
    WallCheck Ey, Ay, py, pyyy, vyy;
    bool ok() const { return Ey.ok() && Ay.ok() && py.ok() && pyyy.ok() && vyy.ok(); }
};

SymmetryReport symmetry_report(const FlowField& U);

}  // namespace duct
