#include "duct/flow.hpp"

#include <cmath>

#include "duct/gas.hpp"

namespace duct {

double CosSeries::operator()(double y) const {
    double s = 0.0;
    for (auto& [k, a] : terms) s += a * std::cos(k * y);
    return s;
}

double CosSeries::d1(double y) const {
    double s = 0.0;
    for (auto& [k, a] : terms) s -= a * k * std::sin(k * y);
    return s;
}

CosSeries CosSeries::scaled(double f) const {
    CosSeries c = *this;
    for (auto& t : c.terms) t.second *= f;
    return c;
}

double SinSeries::operator()(double y) const {
    double s = 0.0;
    for (auto& [k, b] : terms) s += b * std::sin(k * y);
    return s;
}

double SinSeries::d1(double y) const {
    double s = 0.0;
    for (auto& [k, b] : terms) s += b * k * std::cos(k * y);
    return s;
}

SinSeries SinSeries::scaled(double f) const {
    SinSeries c = *this;
    for (auto& t : c.terms) t.second *= f;
    return c;
}

void FlowField::update(double gamma) {
    const int nx = grid.nx, ny = grid.ny;
    u.resize(nx, ny);
    rho.resize(nx, ny);
    c2.resize(nx, ny);
    M.resize(nx, ny);
    for (int i = 0; i < nx; ++i)
        for (int j = 0; j < ny; ++j) {
            ThermoState s = make_state(p(i, j), A(i, j), E(i, j), v(i, j), gamma);
            u(i, j) = s.u;
            rho(i, j) = s.rho;
            c2(i, j) = s.c2;
            M(i, j) = s.M;
        }
}

FlowField broadcast_background(const BackgroundProfile& prof, int n_y, double gamma) {
    FlowField U;
    const int nx = int(prof.nodes.size());
    U.grid = Grid(prof.l, nx, n_y);
    U.p.resize(nx, n_y);
    U.A.resize(nx, n_y);
    U.E.resize(nx, n_y);
    U.v = Field::Zero(nx, n_y);
    for (int i = 0; i < nx; ++i) {
        U.p.row(i).setConstant(prof.nodes[i].p);
        U.A.row(i).setConstant(prof.nodes[i].A);
        U.E.row(i).setConstant(prof.nodes[i].E);
    }
    U.update(gamma);
    return U;
}

}  // namespace duct
