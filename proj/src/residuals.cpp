#include "duct/residuals.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "duct/tangential.hpp"

namespace duct {

namespace {

Field row_profile(const BackgroundProfile& prof, int ny, double BgPoint::*member) {
    Field f(prof.nodes.size(), ny);
    for (size_t i = 0; i < prof.nodes.size(); ++i) f.row(i).setConstant(prof.nodes[i].*member);
    return f;
}

void mass_fields(JetFields& J, const Grid& g, const GasParams& gas) {
    J.m.resize(g.nx, g.ny);
    J.mx.resize(g.nx, g.ny);
    J.my.resize(g.nx, g.ny);
    for (int i = 0; i < g.nx; ++i)
        for (int j = 0; j < g.ny; ++j) {
            J.m(i, j) = gas.m(g.x(i), g.y(j));
            J.mx(i, j) = gas.m_dx(g.x(i), g.y(j));
            J.my(i, j) = gas.m_dy(g.x(i), g.y(j));
        }
}

// One-sided wall derivative of order k at y = 0 (sign +1) or y = pi (sign -1) for each row.
Eigen::VectorXd wall_stencil(const Field& f, int k, double h, bool low) {
    static const double c1[] = {-1.5, 2.0, -0.5};
    static const double c2[] = {2.0, -5.0, 4.0, -1.0};
    static const double c3[] = {-2.5, 9.0, -12.0, 7.0, -1.5};
    const double* c = k == 1 ? c1 : k == 2 ? c2 : c3;
    int n = k + 2;
    double sgn = (low || k % 2 == 0) ? 1.0 : -1.0;
    Eigen::VectorXd r = Eigen::VectorXd::Zero(f.rows());
    for (int s = 0; s < n; ++s) {
        int j = low ? s : int(f.cols()) - 1 - s;
        r += c[s] * f.col(j);
    }
    return sgn * r / std::pow(h, k);
}

}  // namespace

JetFields make_jets(const FlowField& U, const GasParams& gas, const BackgroundProfile* prof) {
    const Grid& g = U.grid;
    const double dx = g.dx(), dy = g.dy();
    JetFields J;
    J.p = U.p;
    J.E = U.E;
    J.A = U.A;
    J.v = U.v;
    if (prof) {
        Field pb = row_profile(*prof, g.ny, &BgPoint::p);
        Field Eb = row_profile(*prof, g.ny, &BgPoint::E);
        Field Ab = row_profile(*prof, g.ny, &BgPoint::A);
        Field ph = U.p - pb, Eh = U.E - Eb, Ah = U.A - Ab;
        J.px = row_profile(*prof, g.ny, &BgPoint::dp) + d_dx(ph, dx);
        J.pxx = row_profile(*prof, g.ny, &BgPoint::d2p) + d2_dx2(ph, dx);
        J.Ex = row_profile(*prof, g.ny, &BgPoint::dE) + d_dx(Eh, dx);
        J.Ax = row_profile(*prof, g.ny, &BgPoint::dA) + d_dx(Ah, dx);
        J.py = d_dy(ph, dy);
        J.pyy = d2_dy2(ph, dy);
        J.pxy = d2_dxdy(ph, dx, dy);
        J.Ey = d_dy(Eh, dy);
        J.Ay = d_dy(Ah, dy);
    } else {
        J.px = d_dx(U.p, dx);
        J.pxx = d2_dx2(U.p, dx);
        J.Ex = d_dx(U.E, dx);
        J.Ax = d_dx(U.A, dx);
        J.py = d_dy(U.p, dy);
        J.pyy = d2_dy2(U.p, dy);
        J.pxy = d2_dxdy(U.p, dx, dy);
        J.Ey = d_dy(U.E, dy);
        J.Ay = d_dy(U.A, dy);
    }
    J.vx = d_dx(U.v, dx);
    J.vy = d_dy(U.v, dy);
    mass_fields(J, g, gas);
    return J;
}

double EulerResiduals::max() const { return std::max({mass, momx, momy, energy}); }

EulerResiduals euler_residuals(const FlowField& U, const GasParams& gas) {
    const Grid& g = U.grid;
    const double dx = g.dx(), dy = g.dy();
    Field ru = U.rho.cwiseProduct(U.u), rv = U.rho.cwiseProduct(U.v);
    Field m(g.nx, g.ny);
    for (int i = 0; i < g.nx; ++i)
        for (int j = 0; j < g.ny; ++j) m(i, j) = gas.m(g.x(i), g.y(j));
    EulerResiduals r;
    r.mass = sup(d_dx(ru, dx) + d_dy(rv, dy) - gas.lambda * U.rho.cwiseProduct(m));
    r.momx = sup(d_dx(ru.cwiseProduct(U.u) + U.p, dx) + d_dy(ru.cwiseProduct(U.v), dy));
    r.momy = sup(d_dx(ru.cwiseProduct(U.v), dx) + d_dy(rv.cwiseProduct(U.v) + U.p, dy));
    r.energy = sup(d_dx(ru.cwiseProduct(U.E), dx) + d_dy(rv.cwiseProduct(U.E), dy));
    return r;
}

DecompositionResiduals decomposition_residuals(const FlowField& U, const GasParams& gas, const BackgroundProfile& prof,
                                               const BoundaryData& bd) {
    const Grid& g = U.grid;
    const double gam = gas.gamma, lam = gas.lambda;
    JetFields J = make_jets(U, gas);
    Field RV(g.nx, g.ny), dE(g.nx, g.ny), dA(g.nx, g.ny), P(g.nx, g.ny);
    for (int i = 0; i < g.nx; ++i)
        for (int j = 0; j < g.ny; ++j) {
            Jet<double> jt = J.at(i, j);
            RV(i, j) = tangential_source(jt, gam, lam);
            double u = U.u(i, j), M2 = U.M(i, j) * U.M(i, j);
            dE(i, j) = J.Ex(i, j) + U.v(i, j) / u * J.Ey(i, j) - transport_rhs_E(U.E(i, j), u, J.m(i, j), lam);
            dA(i, j) = J.Ax(i, j) + U.v(i, j) / u * J.Ay(i, j) -
                       transport_rhs_A(U.A(i, j), u, M2, J.m(i, j), gam, lam);
        }
    Eigen::VectorXd k = integrate_y(RV, g.dy()) / std::numbers::pi;
    for (int i = 0; i < g.nx; ++i)
        for (int j = 0; j < g.ny; ++j) P(i, j) = pressure_operator(J.at(i, j), k(i), gam, lam);
    Field dV = J.vy - RV;
    dV.colwise() += k;

    DecompositionResiduals r;
    r.transport_E = sup(dE);
    r.transport_A = sup(dA);
    r.pressure = sup(P);
    r.tangential = sup(dV);
    r.k_norm = k.cwiseAbs().maxCoeff();
    const auto& b0 = prof.nodes.front();
    const auto& bl = prof.nodes.back();
    r.inlet_E = r.inlet_A = r.inlet_v = r.outlet_p = 0.0;
    for (int j = 0; j < g.ny; ++j) {
        double y = g.y(j);
        r.inlet_E = std::max(r.inlet_E, std::abs(U.E(0, j) - b0.E - bd.E0(y)));
        r.inlet_A = std::max(r.inlet_A, std::abs(U.A(0, j) - b0.A - bd.A0(y)));
        r.inlet_v = std::max(r.inlet_v, std::abs(U.v(0, j) - bd.v0(y)));
        r.outlet_p = std::max(r.outlet_p, std::abs(U.p(g.nx - 1, j) - bl.p - bd.pl(y)));
    }
    r.wall_v = std::max(U.v.col(0).cwiseAbs().maxCoeff(), U.v.col(g.ny - 1).cwiseAbs().maxCoeff());
    return r;
}

WallCheck wall_derivative_check(const Field& f, int order, const Grid& grid) {
    const double h = grid.dy();
    WallCheck c;
    c.value = std::max(wall_stencil(f, order, h, true).cwiseAbs().maxCoeff(),
                       wall_stencil(f, order, h, false).cwiseAbs().maxCoeff());
    Field d = f;
    for (int s = 0; s <= order; ++s) d = d_dy(d, h);
    // Interior samples only: one-sided ends of repeated differences are noisy.
    int lo = order + 1, n = grid.ny - 2 * lo;
    double scale = n > 0 ? d.middleCols(lo, n).cwiseAbs().maxCoeff() : sup(d);
    c.truncation = h * h * scale;
    c.roundoff = 64.0 * std::numeric_limits<double>::epsilon() * sup(f) / std::pow(h, order);
    return c;
}

SymmetryReport symmetry_report(const FlowField& U) {
    const Grid& g = U.grid;
    return {wall_derivative_check(U.E, 1, g), wall_derivative_check(U.A, 1, g), wall_derivative_check(U.p, 1, g),
            wall_derivative_check(U.p, 3, g), wall_derivative_check(U.v, 2, g)};
}

}  // namespace duct
