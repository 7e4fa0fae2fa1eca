#include "duct/iterate.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "duct/error.hpp"
#include "duct/tangential.hpp"

namespace duct {

namespace {

constexpr double kPi = std::numbers::pi;

Field rows_of(const BackgroundProfile& prof, int ny, double BgPoint::*member) {
    Field f(prof.nodes.size(), ny);
    for (size_t i = 0; i < prof.nodes.size(); ++i) f.row(i).setConstant(prof.nodes[i].*member);
    return f;
}

// e4 X + e5 Y + e8 int X + e9 int Y
Field apply_W(const Field& X, const Field& Y, const CoeffTables& ct, double dy) {
    Eigen::VectorXd IX = integrate_y(X, dy), IY = integrate_y(Y, dy);
    Field r(X.rows(), X.cols());
    for (int i = 0; i < X.rows(); ++i) {
        const auto& e = ct.local[i].e;
        r.row(i) = e[4] * X.row(i) + e[5] * Y.row(i);
        r.row(i).array() += e[8] * IX(i) + e[9] * IY(i);
    }
    return r;
}

// Quantities of U shared by the source assembly and the three stages.
struct Stage {
    Field pb, Eb, Ab;
    Field ph, Eh, Ah, phx;
    JetFields J;
    Field RV, Q, RE, RA;
    Eigen::VectorXd k;
    CharacteristicMap map;
    L2Coeffs l2;
    Field lin_E, lin_A;  // lambda (a1 E + a2 A), lambda (b1 E + b2 A)
    Field pE, pA;        // lambda a3 p, lambda b3 p
};

Stage prepare(const FlowField& U, const Problem& pb) {
    const Grid& g = pb.grid();
    const auto& prof = pb.profile();
    const auto& ct = pb.coeffs();
    const GasParams& gas = pb.gas();
    const double gam = gas.gamma, lam = gas.lambda;
    const int nx = g.nx, ny = g.ny;
    if (U.grid.nx != nx || U.grid.ny != ny) throw domain_error("flow field does not match the problem grid");

    Stage s;
    s.pb = rows_of(prof, ny, &BgPoint::p);
    s.Eb = rows_of(prof, ny, &BgPoint::E);
    s.Ab = rows_of(prof, ny, &BgPoint::A);
    s.ph = U.p - s.pb;
    s.Eh = U.E - s.Eb;
    s.Ah = U.A - s.Ab;
    s.J = make_jets(U, gas, &prof);
    s.phx = s.J.px - rows_of(prof, ny, &BgPoint::dp);

    s.RV.resize(nx, ny);
    s.RE.resize(nx, ny);
    s.RA.resize(nx, ny);
    for (int i = 0; i < nx; ++i) {
        const BgPoint& b = prof.nodes[i];
        for (int j = 0; j < ny; ++j) {
            s.RV(i, j) = tangential_source(s.J.at(i, j), gam, lam);
            double u = U.u(i, j), M2 = U.M(i, j) * U.M(i, j), m = s.J.m(i, j);
            s.RE(i, j) = transport_rhs_E(U.E(i, j), u, m, lam) - b.dE;
            s.RA(i, j) = transport_rhs_A(U.A(i, j), u, M2, m, gam, lam) - b.dA;
        }
    }
    s.k = integrate_y(s.RV, g.dy()) / kPi;
    s.Q.resize(nx, ny);
    for (int i = 0; i < nx; ++i)
        for (int j = 0; j < ny; ++j)
            s.Q(i, j) = prof.nodes[i].rho * pressure_operator(s.J.at(i, j), s.k(i), gam, lam);

    s.map = trace_characteristics(U.u, U.v, g);

    s.l2.kxx.resize(nx, ny);
    s.l2.kyy_sound.resize(nx, ny);
    s.l2.kyy_v.resize(nx, ny);
    s.l2.kxy.resize(nx, ny);
    s.lin_E.resize(nx, ny);
    s.lin_A.resize(nx, ny);
    s.pE.resize(nx, ny);
    s.pA.resize(nx, ny);
    for (int i = 0; i < nx; ++i) {
        const BgPoint& b = prof.nodes[i];
        const LocalCoeffs& c = ct.local[i];
        for (int j = 0; j < ny; ++j) {
            double dc2 = U.c2(i, j) - b.c2;
            double v = U.v(i, j);
            s.l2.kxx(i, j) = (2.0 * s.Eh(i, j) - (gam + 1.0) / (gam - 1.0) * dc2) / b.c2;
            s.l2.kyy_sound(i, j) = -dc2 / b.c2;
            s.l2.kyy_v(i, j) = v * v / b.c2;
            s.l2.kxy(i, j) = 2.0 * U.u(i, j) * v / b.c2;
            s.lin_E(i, j) = lam * (c.a1 * s.Eh(i, j) + c.a2 * s.Ah(i, j));
            s.lin_A(i, j) = lam * (c.b1 * s.Eh(i, j) + c.b2 * s.Ah(i, j));
            s.pE(i, j) = lam * c.a3 * s.ph(i, j);
            s.pA(i, j) = lam * c.b3 * s.ph(i, j);
        }
    }
    return s;
}

InletPair inlet_data(const BoundaryData& bd) {
    return [&bd](double y) { return Eigen::Vector2d(bd.E0(y), bd.A0(y)); };
}

Eigen::VectorXd robin_data(const Stage& s, const Problem& pb) {
    const Grid& g = pb.grid();
    const GasParams& gas = pb.gas();
    const auto& prof = pb.profile();
    const double lam = gas.lambda, g0 = pb.coeffs().gamma0();
    Eigen::VectorXd G(g.ny);
    for (int j = 0; j < g.ny; ++j) {
        Jet<double> jt = s.J.at(0, j);
        double y = g.y(j);
        const BoundaryData& bd = pb.boundary();
        jt.E = prof.nodes[0].E + bd.E0(y);
        jt.Ey = bd.E0.d1(y);
        jt.A = prof.nodes[0].A + bd.A0(y);
        jt.Ay = bd.A0.d1(y);
        jt.v = bd.v0(y);
        jt.vy = bd.v0.d1(y);
        G(j) = s.phx(0, j) + lam * g0 * s.ph(0, j) - inlet_remainder(jt, gas.gamma, lam);
        if (!std::isfinite(G(j))) throw numerical_error("inlet data admits no subsonic state at y = " + std::to_string(y));
    }
    return G;
}

Eigen::VectorXd outlet_data(const Problem& pb) {
    const Grid& g = pb.grid();
    Eigen::VectorXd gl(g.ny);
    for (int j = 0; j < g.ny; ++j) gl(j) = pb.boundary().pl(g.y(j));
    return gl;
}

Field v_source(const Stage& s, const Problem& pb) {
    return s.RV - v_linear_part(s.phx, s.ph, s.Eh, s.Ah, pb.coeffs().local);
}

double sup_forward(const Field& d, double dx, double dy) {
    double r = sup(d);
    if (d.rows() > 1) r += sup((d.bottomRows(d.rows() - 1) - d.topRows(d.rows() - 1)) / dx);
    if (d.cols() > 1) r += sup((d.rightCols(d.cols() - 1) - d.leftCols(d.cols() - 1)) / dy);
    return r;
}

}  // namespace

Problem::Problem(const InletSpec& inlet, const GasParams& gas, double l, int n_x, int n_y, BoundaryData bd)
    : gas_(gas),
      bg_(inlet, gas),
      prof_(background_profile(inlet, gas, l, n_x)),
      ct_(bg_, prof_),
      grid_(l, n_x, n_y),
      bd_(std::move(bd)) {
    gas_.validate(l);
    if (n_x < 5 || n_y < 5) throw domain_error("grid needs at least 5 points per direction");
    for (double y : {0.0, kPi})
        if (std::abs(bd_.v0(y)) > 1e-14) throw domain_error("inlet tangential velocity must vanish at the walls");
}

FlowField Problem::background_field() const { return broadcast_background(prof_, grid_.ny, gas_.gamma); }

SourceBundle assemble_sources(const FlowField& U, const Problem& pb) {
    const Grid& g = pb.grid();
    const auto& ct = pb.coeffs();
    Stage s = prepare(U, pb);
    auto star = solve_cauchy_system(s.map, ct.derived, s.RE - s.lin_E, s.RA - s.lin_A, inlet_data(pb.boundary()));
    Field zero = g.zeros();
    auto hom = solve_cauchy_system(s.map, ct.derived, zero, zero, inlet_data(pb.boundary()));

    SourceBundle b;
    Field h = apply_L1(s.ph, ct, g) + apply_L2(s.ph, s.l2, g) - s.Q +
              apply_W(s.Eh - star.E, s.Ah - star.A, ct, g.dy());
    b.F0 = -apply_W(hom.E, hom.A, ct, g.dy());
    b.F_p = h - b.F0;
    b.G_p = robin_data(s, pb);
    b.g_l = outlet_data(pb);
    b.F_E = s.RE - s.lin_E - s.pE;
    b.F_A = s.RA - s.lin_A - s.pA;
    b.F_v = v_source(s, pb);
    return b;
}

FlowField apply_T(const FlowField& U, const Problem& pb, const SolverParams& sp, StepInfo* info) {
    const Grid& g = pb.grid();
    const auto& ct = pb.coeffs();
    Stage s = prepare(U, pb);
    InletPair inlet = inlet_data(pb.boundary());

    // Pressure.
    auto star = solve_cauchy_system(s.map, ct.derived, s.RE - s.lin_E, s.RA - s.lin_A, inlet);
    EllipticProblem ep;
    ep.h = apply_L1(s.ph, ct, g) + apply_L2(s.ph, s.l2, g) - s.Q + apply_W(s.Eh - star.E, s.Ah - star.A, ct, g.dy());
    ep.g0 = robin_data(s, pb);
    ep.gl = outlet_data(pb);
    ep.l2 = s.l2;
    EllipticSolution es = solve_full_L(ep, ct, g, sp.n_modes, sp.elliptic_tol, sp.elliptic_max_iter, sp.h0_gate);
    const Field& pt = es.p;

    // Enthalpy and entropy along the characteristics of U.
    auto ea = solve_enthalpy_entropy(s.map, pt, s.RE - s.lin_E - s.pE, s.RA - s.lin_A - s.pA, ct, inlet);

    // Tangential velocity.
    Field ptx = d_dx(pt, g.dx());
    Field rhs = assemble_v_rhs(ptx, pt, ea.E, ea.A, v_source(s, pb), ct.local, g);
    Field vt(g.nx, g.ny);
    double defect = 0.0;
    for (int i = 0; i < g.nx; ++i) {
        Eigen::VectorXd row = rhs.row(i).transpose();
        defect = std::max(defect, std::abs(compatibility_defect(row, 0.0, 0.0)));
        vt.row(i) = solve_crosssection_bvp(row, 0.0, 0.0).transpose();
    }

    FlowField out;
    out.grid = g;
    out.p = s.pb + pt;
    out.E = s.Eb + ea.E;
    out.A = s.Ab + ea.A;
    out.v = vt;
    out.update(pb.gas().gamma);
    if (info) {
        info->elliptic_iterations = es.iterations;
        info->l2_norm = s.l2.sup_norm();
        info->compat_defect = defect;
    }
    return out;
}

double iteration_norm(const FlowField& a, const FlowField& b) {
    const double dx = a.grid.dx(), dy = a.grid.dy();
    return sup_forward(a.p - b.p, dx, dy) + sup_forward(a.A - b.A, dx, dy) + sup_forward(a.E - b.E, dx, dy) +
           sup_forward(a.v - b.v, dx, dy);
}

double boundary_amplitude(const BoundaryData& bd) {
    double e = 0.0;
    auto acc = [&e](const auto& series) {
        double s = 0.0;
        for (auto& t : series.terms) s += std::abs(t.second);
        e = std::max(e, s);
    };
    acc(bd.E0);
    acc(bd.A0);
    acc(bd.v0);
    acc(bd.pl);
    return e;
}

ResidualReport residual_report(const FlowField& U, const Problem& pb) {
    ResidualReport r;
    r.euler = euler_residuals(U, pb.gas());
    r.decomposition = decomposition_residuals(U, pb.gas(), pb.profile(), pb.boundary());
    r.symmetry = symmetry_report(U);
    Stage s = prepare(U, pb);
    r.k_norm = s.k.cwiseAbs().maxCoeff();
    r.epsilon_in = boundary_amplitude(pb.boundary());
    r.field_delta_norm = iteration_norm(U, pb.background_field());
    return r;
}

FixedPointResult run_fixed_point(const Problem& pb, const SolverParams& sp) {
    FlowField U = pb.background_field();
    std::vector<double> changes, ratios;
    int grow = 0;
    for (int n = 1; n <= sp.max_iter; ++n) {
        FlowField next;
        try {
            next = apply_T(U, pb, sp);
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::numerical) throw;
            std::ostringstream os;
            os << "fixed-point iteration failed at step " << n << ": " << e.what();
            throw numerical_error(os.str());
        }
        double d = iteration_norm(next, U);
        if (!std::isfinite(d)) throw numerical_error("fixed-point iteration produced a non-finite iterate");
        ratios.push_back(changes.empty() ? 1.0 : d / changes.back());
        grow = (!changes.empty() && d > changes.back()) ? grow + 1 : 0;
        changes.push_back(d);
        U = std::move(next);
        if (d <= sp.tol) {
            FixedPointResult res{U, residual_report(U, pb)};
            res.report.changes = changes;
            res.report.contraction_ratio = ratios;
            res.report.iterations = n;
            return res;
        }
        if (grow >= 3) {
            std::ostringstream os;
            os << "fixed-point iteration diverges: change " << d << " after " << n << " steps";
            throw numerical_error(os.str());
        }
    }
    std::ostringstream os;
    os << "fixed-point iteration did not converge in " << sp.max_iter << " steps, last change " << changes.back();
    throw numerical_error(os.str());
}

Field recover_dx_v(const FlowField& U, const GasParams& gas) {
    const Grid& g = U.grid;
    Field vy = d_dy(U.v, g.dy()), py = d_dy(U.p, g.dy());
    Field r(g.nx, g.ny);
    for (int i = 0; i < g.nx; ++i)
        for (int j = 0; j < g.ny; ++j) {
            double u = U.u(i, j), v = U.v(i, j);
            r(i, j) = -v / u * vy(i, j) - py(i, j) / (u * U.rho(i, j)) - gas.lambda * gas.m(g.x(i), g.y(j)) * v / u;
        }
    return r;
}

DxVCheck check_dx_v(const FlowField& U, const GasParams& gas) {
    const Grid& g = U.grid;
    const double dx = g.dx(), dy = g.dy();
    Field vx = d_dx(U.v, dx);
    DxVCheck c;
    c.defect = sup(recover_dx_v(U, gas) - vx);
    Field v3x = d_dx(d2_dx2(U.v, dx), dx), v3y = d_dy(d2_dy2(U.v, dy), dy), p3y = d_dy(d2_dy2(U.p, dy), dy);
    Field ru = U.rho.cwiseProduct(U.u);
    double w = sup(U.v.cwiseQuotient(U.u));
    c.truncation = dx * dx / 3.0 * sup(v3x) + dy * dy / 3.0 * (w * sup(v3y) + sup(p3y) / ru.minCoeff());
    return c;
}

}  // namespace duct
