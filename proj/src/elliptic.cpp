#include "duct/elliptic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <boost/math/interpolators/cardinal_cubic_b_spline.hpp>

#include "duct/parallel.hpp"

namespace duct {

namespace {
using std::numbers::pi;
}

Eigen::VectorXd cosine_analyze(const Eigen::VectorXd& f, int N, bool check_symmetry) {
    const int ny = int(f.size());
    if (N < 0 || N >= ny - 1) throw domain_error("cosine analysis: need 0 <= N < n_y - 1");
    const double dy = pi / (ny - 1);
    if (check_symmetry) {
        Eigen::VectorXd d = diff1(f, dy);
        double scale = f.cwiseAbs().maxCoeff();
        if (std::max(std::abs(d(0)), std::abs(d(ny - 1))) > 1e-2 * scale + 1e-300)
            throw domain_error("cosine analysis: input violates the wall symmetry");
    }
    Eigen::VectorXd w = Eigen::VectorXd::Constant(ny, dy);
    w(0) *= 0.5;
    w(ny - 1) *= 0.5;
    Eigen::VectorXd c(N + 1);
    for (int m = 0; m <= N; ++m) {
        double s = 0.0;
        for (int j = 0; j < ny; ++j) s += w(j) * f(j) * std::cos(m * dy * j);
        c(m) = 2.0 / pi * s;
    }
    return c;
}

Eigen::VectorXd cosine_synthesize(const Eigen::VectorXd& c, int ny) {
    const double dy = pi / (ny - 1);
    Eigen::VectorXd f = Eigen::VectorXd::Constant(ny, 0.5 * c(0));
    for (int m = 1; m < c.size(); ++m)
        for (int j = 0; j < ny; ++j) f(j) += c(m) * std::cos(m * dy * j);
    return f;
}

Eigen::MatrixXd analyze_field(const Field& f, int N) {
    Eigen::MatrixXd s(N + 1, f.rows());
    for (Eigen::Index i = 0; i < f.rows(); ++i) s.col(i) = cosine_analyze(f.row(i).transpose(), N, false);
    return s;
}

Field synthesize_field(const Eigen::MatrixXd& spec, int ny) {
    Field f(spec.cols(), ny);
    for (Eigen::Index i = 0; i < spec.cols(); ++i) f.row(i) = cosine_synthesize(spec.col(i), ny).transpose();
    return f;
}

double L2Coeffs::sup_norm() const {
    if (empty()) return 0.0;
    return std::max({sup(kxx), sup(kyy_sound), sup(kyy_v), sup(kxy)});
}

EllipticSolution solve_L1(const EllipticProblem& prob, const CoeffTables& ct, const Grid& grid, int N) {
    const int nx = grid.nx, ny = grid.ny;
    if (!prob.h.allFinite() || !prob.g0.allFinite() || !prob.gl.allFinite())
        throw numerical_error("elliptic data is not finite");
    Eigen::VectorXd g0 = cosine_analyze(prob.g0, N, false), gl = cosine_analyze(prob.gl, N, false);
    Eigen::MatrixXd hs = analyze_field(prob.h, N);

    EllipticSolution out;
    double total = 0.0, kept = 0.0;
    for (int i = 0; i < nx; ++i) {
        total += trapezoid(prob.h.row(i).transpose().cwiseAbs2(), grid.dy());
        kept += pi / 4.0 * hs(0, i) * hs(0, i) + pi / 2.0 * hs.col(i).tail(N).squaredNorm();
    }
    out.tail_fraction = total > 0.0 ? std::max(0.0, total - kept) / total : 0.0;

    const int nf = int(ct.fine.size());
    const double dx = grid.dx();
    out.spectrum = Eigen::MatrixXd::Zero(N + 1, nx);
    Eigen::MatrixXd dspec = Eigen::MatrixXd::Zero(N + 1, nx);
    parallel_for(N + 1, [&](int m) {
        std::vector<double> row(nx);
        for (int i = 0; i < nx; ++i) row[i] = hs(m, i);
        boost::math::interpolators::cardinal_cubic_b_spline<double> spl(row.begin(), row.end(), 0.0, dx);
        std::vector<double> hf(nf);
        for (int j = 0; j < nf; ++j) hf[j] = spl(std::min(ct.fine[j].x, grid.l));
        for (int i = 0; i < nx; ++i) hf[2 * ct.refine() * i] = row[i];
        ModeSolution s = solve_mode_bvp_sampled(m, hf, g0(m), gl(m), ct);
        out.spectrum.row(m) = s.p.transpose();
        dspec.row(m) = s.z.col(3).transpose();
    });
    out.p = synthesize_field(out.spectrum, ny);
    out.px = synthesize_field(dspec, ny);
    return out;
}

Field apply_L1(const Field& p, const CoeffTables& ct, const Grid& grid) {
    const int nx = grid.nx;
    const double dx = grid.dx(), dy = grid.dy(), lam = ct.lambda();
    Field px = d_dx(p, dx), pxx = d2_dx2(p, dx), pyy = d2_dy2(p, dy);
    Eigen::VectorXd Ip = integrate_y(p, dy), Ipx = integrate_y(px, dy);
    Eigen::VectorXd a4(nx), b4(nx);
    for (int i = 0; i < nx; ++i) {
        a4(i) = ct.derived[i].a4;
        b4(i) = ct.derived[i].b4;
    }
    Field Va(nx, grid.ny), Vb(nx, grid.ny);
    for (int j = 0; j < grid.ny; ++j) {
        Va.col(j) = cumulative(a4.cwiseProduct(p.col(j)), dx);
        Vb.col(j) = cumulative(b4.cwiseProduct(p.col(j)), dx);
    }
    Eigen::VectorXd Wa = cumulative(a4.cwiseProduct(Ip), dx), Wb = cumulative(b4.cwiseProduct(Ip), dx);
    Field L(nx, grid.ny);
    for (int i = 0; i < nx; ++i) {
        const auto& e = ct.local[i].e;
        const auto& dc = ct.derived[i];
        double row_const = e[6] * Ipx(i) + e[7] * Ip(i) + lam * (dc.e12 * Wa(i) + dc.e13 * Wb(i));
        L.row(i) = e[1] * pxx.row(i) - pyy.row(i) + e[2] * px.row(i) + e[3] * p.row(i) +
                   lam * (dc.e10 * Va.row(i) + dc.e11 * Vb.row(i));
        L.row(i).array() += row_const;
    }
    return L;
}

Field apply_L1_residual(const Field& p, const EllipticProblem& prob, const CoeffTables& ct, const Grid& grid) {
    return apply_L1(p, ct, grid) - prob.h;
}

Field apply_L2(const Field& p, const L2Coeffs& k, const Grid& grid) {
    if (k.empty()) return Field::Zero(p.rows(), p.cols());
    const double dx = grid.dx(), dy = grid.dy();
    Field pyy = d2_dy2(p, dy);
    return k.kxx.cwiseProduct(d2_dx2(p, dx)) + (k.kyy_sound + k.kyy_v).cwiseProduct(pyy) +
           k.kxy.cwiseProduct(d2_dxdy(p, dx, dy));
}

EllipticSolution solve_full_L(const EllipticProblem& prob, const CoeffTables& ct, const Grid& grid, int N, double tol,
                              int max_iter, double h0_gate) {
    if (prob.l2.sup_norm() > h0_gate) throw numerical_error("L2 coefficients exceed the smallness gate");
    EllipticSolution sol = solve_L1(prob, ct, grid, N);
    if (prob.l2.empty()) return sol;
    EllipticProblem sub = prob;
    int grow = 0;
    double last = std::numeric_limits<double>::infinity();
    for (int it = 1; it <= max_iter; ++it) {
        sub.h = prob.h - apply_L2(sol.p, prob.l2, grid);
        EllipticSolution next = solve_L1(sub, ct, grid, N);
        double change = sup(next.p - sol.p);
        next.changes = sol.changes;
        next.changes.push_back(change);
        next.iterations = it + 1;
        sol = std::move(next);
        if (!std::isfinite(change)) throw numerical_error("operator splitting produced a non-finite iterate");
        if (change <= tol) return sol;
        grow = change > last ? grow + 1 : 0;
        if (grow >= 3) throw numerical_error("operator splitting diverges: L2 too large for the smallness gate");
        last = change;
    }
    throw numerical_error("operator splitting did not converge, last change " + std::to_string(last));
}

}  // namespace duct
