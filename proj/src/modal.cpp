#include "duct/modal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/numeric/odeint.hpp>

namespace duct {

namespace {

constexpr double kSegmentGrowth = 8.0;

using State16 = std::array<double, 16>;

Mat4 to_mat(const State16& s) {
    Mat4 M;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) M(i, j) = s[4 * i + j];
    return M;
}

State16 to_state(const Mat4& M) {
    State16 s;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) s[4 * i + j] = M(i, j);
    return s;
}

int segment_count(const ModeSystem& sys) {
    double g = sys.growth_rate() * sys.coeffs->length();
    return std::max(1, int(std::ceil(g / kSegmentGrowth)));
}

Mat4 adaptive_segment(const ModeSystem& sys, double x0, double x1, double tol) {
    namespace ode = boost::numeric::odeint;
    State16 s = to_state(Mat4::Identity());
    auto rhs = [&](const State16& z, State16& dz, double x) { dz = to_state(sys.A_at(x) * to_mat(z)); };
    ode::integrate_adaptive(ode::make_controlled(tol, tol, ode::runge_kutta_dopri5<State16>()), rhs, s, x0, x1,
                            (x1 - x0) / 32.0);
    return to_mat(s);
}

ChiValue chi_from(const ModeSystem& sys, const Mat4& P, double log_scale) {
    const double lg = sys.coeffs->lambda() * sys.coeffs->gamma0();
    double n = P.norm();
    double raw = lg * P(2, 3) - P(2, 2);
    ChiValue c{};
    c.scaled = raw / n;
    c.psi_norm = std::exp(log_scale) * n;
    c.chi = raw * std::exp(log_scale);
    c.usable = std::abs(c.scaled) >= 1e-8 * std::max(1.0, std::abs(lg));
    return c;
}

}  // namespace

Mat4 ModeSystem::A(const ModeSample& s) const {
    TildeE t = tilde_e(s.c, s.dc, m, coeffs->lambda());
    Mat4 a = Mat4::Zero();
    a(0, 2) = s.dc.b4;
    a(1, 2) = s.dc.a4;
    a(2, 3) = 1.0;
    a(3, 0) = -t.e5 / t.e1;
    a(3, 1) = -t.e4 / t.e1;
    a(3, 2) = -t.e3 / t.e1;
    a(3, 3) = -t.e2 / t.e1;
    return a;
}

Mat4 ModeSystem::B() const {
    Mat4 b = Mat4::Zero();
    b(0, 0) = 1.0;
    b(1, 1) = 1.0;
    b(2, 2) = coeffs->lambda() * coeffs->gamma0();
    b(2, 3) = 1.0;
    return b;
}

Mat4 ModeSystem::C() const {
    Mat4 c = Mat4::Zero();
    c(3, 2) = 1.0;
    return c;
}

double ModeSystem::growth_rate() const {
    double r = 0.0;
    for (std::size_t i = 0; i < coeffs->local.size(); ++i) {
        TildeE t = tilde_e(coeffs->local[i], coeffs->derived[i], m, coeffs->lambda());
        double b = std::abs(t.e2 / t.e1) / 2.0;
        r = std::max(r, b + std::sqrt(std::abs(t.e3 / t.e1) + b * b));
    }
    return r;
}

ModeSystem assemble_mode_matrix(int m, const CoeffTables& coeffs) {
    if (m < 0) throw domain_error("mode index must be nonnegative");
    return ModeSystem{m, &coeffs};
}

Mat4 Fundamental::value() const { return std::exp(log_scale) * scaled; }

Fundamental fundamental_4x4(const ModeSystem& sys, double tol) {
    const int S = segment_count(sys);
    const double l = sys.coeffs->length();
    Mat4 P = Mat4::Identity();
    double log_scale = 0.0;
    for (int s = 0; s < S; ++s) {
        P = adaptive_segment(sys, l * s / S, l * (s + 1) / S, tol) * P;
        double n = P.norm();
        if (!std::isfinite(n) || n == 0.0) throw numerical_error("fundamental matrix: overflow in segment product");
        P /= n;
        log_scale += std::log(n);
    }
    return {P, log_scale, S};
}

std::vector<Mat4> fundamental_4x4_at(const ModeSystem& sys, const std::vector<double>& xs, double tol) {
    std::vector<Mat4> out;
    Mat4 P = Mat4::Identity();
    double x = 0.0;
    for (double xi : xs) {
        if (xi > x) P = adaptive_segment(sys, x, xi, tol) * P;
        x = xi;
        out.push_back(P);
    }
    return out;
}

Mat4 fundamental_4x4_fixed(const ModeSystem& sys, double x_end, int n) {
    const double h = x_end / n;
    Mat4 Z = Mat4::Identity();
    for (int i = 0; i < n; ++i) {
        double x = i * h;
        Mat4 A0 = sys.A_at(x), Am = sys.A_at(x + 0.5 * h), A1 = sys.A_at(x + h);
        Mat4 k1 = A0 * Z, k2 = Am * (Z + 0.5 * h * k1), k3 = Am * (Z + 0.5 * h * k2), k4 = A1 * (Z + h * k3);
        Z += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    return Z;
}

ChiValue chi_info(const ModeSystem& sys) {
    Fundamental f = fundamental_4x4(sys);
    return chi_from(sys, f.scaled, f.log_scale);
}

double chi(int m, const CoeffTables& coeffs) { return chi_info(assemble_mode_matrix(m, coeffs)).chi; }

ModeSolution solve_mode_bvp_sampled(int m, const std::vector<double>& h_fine, double g0, double gl,
                                    const CoeffTables& ct) {
    ModeSystem sys = assemble_mode_matrix(m, ct);
    const int nx = ct.n_x(), r = ct.refine(), nf = int(ct.fine.size());
    if (int(h_fine.size()) != nf) throw domain_error("mode forcing must be sampled on the fine grid");
    const double H = (ct.profile().x[1] - ct.profile().x[0]) / r;

    std::vector<Mat4> A(nf);
    std::vector<double> f(nf);
    for (int j = 0; j < nf; ++j) {
        A[j] = sys.A(ct.fine[j]);
        TildeE t = tilde_e(ct.fine[j].c, ct.fine[j].dc, m, ct.lambda());
        f[j] = h_fine[j] / t.e1;
    }

    const int S = std::min(segment_count(sys), nx - 1);
    std::vector<int> brk(S + 1);
    for (int s = 0; s <= S; ++s) brk[s] = int(std::lround(double(nx - 1) * s / S));

    // Segment propagators and particular solutions stored at every node.
    std::vector<Mat4> Y(nx);
    std::vector<Vec4> w(nx);
    std::vector<Mat4> Yend(S);
    std::vector<Vec4> wend(S);
    Mat4 P = Mat4::Identity();
    double log_scale = 0.0;
    for (int s = 0; s < S; ++s) {
        Mat4 Z = Mat4::Identity();
        Vec4 v = Vec4::Zero();
        Y[brk[s]] = Z;
        w[brk[s]] = v;
        for (int k = brk[s]; k < brk[s + 1]; ++k) {
            for (int q = 0; q < r; ++q) {
                int j = 2 * (k * r + q);
                const Mat4 &A0 = A[j], &Am = A[j + 1], &A1 = A[j + 2];
                Vec4 f0(0, 0, 0, f[j]), fm(0, 0, 0, f[j + 1]), f1(0, 0, 0, f[j + 2]);
                Mat4 K1 = A0 * Z, K2 = Am * (Z + 0.5 * H * K1), K3 = Am * (Z + 0.5 * H * K2), K4 = A1 * (Z + H * K3);
                Z += H / 6.0 * (K1 + 2.0 * K2 + 2.0 * K3 + K4);
                Vec4 k1 = A0 * v + f0, k2 = Am * (v + 0.5 * H * k1) + fm, k3 = Am * (v + 0.5 * H * k2) + fm,
                     k4 = A1 * (v + H * k3) + f1;
                v += H / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
            }
            if (k + 1 < brk[s + 1]) {
                Y[k + 1] = Z;
                w[k + 1] = v;
            }
        }
        Yend[s] = Z;
        wend[s] = v;
        P = Z * P;
        double n = P.norm();
        P /= n;
        log_scale += std::log(n);
    }
    ChiValue cv = chi_from(sys, P, log_scale);
    if (!cv.usable) throw scondition_error("mode " + std::to_string(m) + ": solvability determinant below threshold");

    // Unknowns: z at every breakpoint.
    const int N = 4 * (S + 1);
    Eigen::MatrixXd K = Eigen::MatrixXd::Zero(N, N);
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(N);
    K(0, 0) = 1.0;
    K(1, 1) = 1.0;
    K(2, 2) = ct.lambda() * ct.gamma0();
    K(2, 3) = 1.0;
    rhs(2) = g0;
    for (int s = 0; s < S; ++s) {
        int row = 3 + 4 * s;
        K.block(row, 4 * (s + 1), 4, 4) = Mat4::Identity();
        K.block(row, 4 * s, 4, 4) = -Yend[s];
        rhs.segment(row, 4) = wend[s];
    }
    K(N - 1, 4 * S + 2) = 1.0;
    rhs(N - 1) = gl;
    Eigen::VectorXd Z = K.fullPivLu().solve(rhs);

    ModeSolution sol;
    sol.m = m;
    sol.chi = cv.chi;
    sol.segments = S;
    sol.z.resize(nx, 4);
    for (int s = 0; s < S; ++s) {
        Vec4 zs = Z.segment(4 * s, 4);
        for (int k = brk[s]; k < brk[s + 1]; ++k) sol.z.row(k) = (Y[k] * zs + w[k]).transpose();
    }
    sol.z.row(nx - 1) = Z.segment(4 * S, 4).transpose();
    sol.p = sol.z.col(2);
    return sol;
}

ModeSolution solve_mode_bvp(int m, const ScalarFn& h, double g0, double gl, const CoeffTables& ct) {
    std::vector<double> hf(ct.fine.size());
    for (std::size_t j = 0; j < hf.size(); ++j) hf[j] = h(ct.fine[j].x);
    return solve_mode_bvp_sampled(m, hf, g0, gl, ct);
}

double mode_defect(const ModeSolution& sol, const ScalarFn& h, const CoeffTables& ct) {
    using GL = boost::math::quadrature::gauss<double, 7>;
    const auto& xs = ct.profile().x;
    const int nx = int(xs.size());
    const double lam = ct.lambda();
    auto herm = [&](int k, double t, double& p, double& dp) {
        double hh = xs[k + 1] - xs[k], s = (t - xs[k]) / hh;
        double p0 = sol.z(k, 2), p1 = sol.z(k + 1, 2), d0 = sol.z(k, 3), d1 = sol.z(k + 1, 3);
        double s2 = s * s, s3 = s2 * s;
        p = (2 * s3 - 3 * s2 + 1) * p0 + (s3 - 2 * s2 + s) * hh * d0 + (-2 * s3 + 3 * s2) * p1 + (s3 - s2) * hh * d1;
        dp = ((6 * s2 - 6 * s) * p0 + (3 * s2 - 4 * s + 1) * hh * d0 + (-6 * s2 + 6 * s) * p1 + (3 * s2 - 2 * s) * hh * d1) / hh;
    };
    auto vol = [&](int k, double a, double b, double& va, double& vb) {
        va = GL::integrate([&](double t) { double p, dp; herm(k, t, p, dp); return ct.interpolate(t).dc.a4 * p; }, a, b);
        vb = GL::integrate([&](double t) { double p, dp; herm(k, t, p, dp); return ct.interpolate(t).dc.b4 * p; }, a, b);
    };
    double Va = 0.0, Vb = 0.0, worst = 0.0;
    for (int k = 0; k + 1 < nx; ++k) {
        auto integrand = [&](double t) {
            double p, dp, va, vb;
            herm(k, t, p, dp);
            vol(k, xs[k], t, va, vb);
            ModeSample s = ct.interpolate(t);
            TildeE e = tilde_e(s.c, s.dc, sol.m, lam);
            return (h(t) - e.e2 * dp - e.e3 * p - e.e4 * (Va + va) - e.e5 * (Vb + vb)) / e.e1;
        };
        double dx = xs[k + 1] - xs[k];
        double d = (sol.z(k + 1, 3) - sol.z(k, 3) - GL::integrate(integrand, xs[k], xs[k + 1])) / dx;
        worst = std::max(worst, std::abs(d));
        double va, vb;
        vol(k, xs[k], xs[k + 1], va, vb);
        Va += va;
        Vb += vb;
    }
    return worst;
}

SConditionReport scan_scondition(const InletSpec& inlet, const GasParams& gas, double l, int n_x, int m_max,
                                 double lambda_min, double lambda_max, int steps) {
    if (m_max < 0 || steps < 1 || !(lambda_max >= lambda_min)) throw domain_error("scondition: bad scan parameters");
    SConditionReport rep;
    const double nan = std::numeric_limits<double>::quiet_NaN();
    auto chis_at = [&](double lam, std::vector<ChiValue>* out) {
        GasParams g = gas;
        g.lambda = lam;
        double ls = critical_length(inlet, g);
        if (!(l < ls)) return false;
        Background bg(inlet, g);
        BackgroundProfile prof = background_profile(inlet, g, l, n_x);
        CoeffTables ct(bg, prof, 1);
        out->clear();
        for (int m = 0; m <= m_max; ++m) out->push_back(chi_info(assemble_mode_matrix(m, ct)));
        return true;
    };
    for (int m = 0; m <= m_max; ++m) rep.modes.push_back(m);
    rep.chi.assign(m_max + 1, {});
    rep.min_abs_chi.assign(m_max + 1, std::numeric_limits<double>::infinity());
    std::vector<ChiValue> cv;
    for (int i = 0; i <= steps; ++i) {
        double lam = lambda_min + (lambda_max - lambda_min) * i / steps;
        rep.lambdas.push_back(lam);
        bool ok = chis_at(lam, &cv);
        for (int m = 0; m <= m_max; ++m) {
            double c = ok ? cv[m].chi : nan;
            rep.chi[m].push_back(c);
            if (ok) rep.min_abs_chi[m] = std::min(rep.min_abs_chi[m], std::abs(c));
        }
    }
    for (int m = 0; m <= m_max; ++m) {
        for (int i = 0; i < steps; ++i) {
            double c0 = rep.chi[m][i], c1 = rep.chi[m][i + 1];
            if (!(std::isfinite(c0) && std::isfinite(c1)) || c0 * c1 > 0.0) continue;
            double a = rep.lambdas[i], b = rep.lambdas[i + 1], fa = c0;
            while (b - a > 1e-10) {
                double mid = 0.5 * (a + b);
                if (!chis_at(mid, &cv)) break;
                double fm = cv[m].chi;
                if (fa * fm <= 0.0) {
                    b = mid;
                } else {
                    a = mid;
                    fa = fm;
                }
            }
            rep.roots.push_back({m, 0.5 * (a + b)});
        }
    }
    if (chis_at(gas.lambda, &cv)) {
        rep.margin = std::numeric_limits<double>::infinity();
        rep.holds = true;
        for (auto& c : cv) {
            rep.margin = std::min(rep.margin, std::abs(c.chi));
            rep.holds = rep.holds && c.usable;
        }
    }
    return rep;
}

}  // namespace duct
