#include "duct/linearization.hpp"

#include <cmath>
#include <numbers>

#include <boost/numeric/odeint.hpp>

namespace duct {

namespace {

using std::numbers::pi;

Mat2 generator(const BgPoint& b, double g, double lam) {
    LocalCoeffs c = local_coeffs(b, g, lam);
    Mat2 G;
    G << c.a1, c.a2, c.b1, c.b2;
    return lam * G;
}

Mat2 integrate_phi(const Background& bg, Mat2 Phi, double x0, double x1, double tol) {
    namespace ode = boost::numeric::odeint;
    using State = std::array<double, 4>;
    const double g = bg.gas().gamma, lam = bg.gas().lambda;
    if (lam == 0.0 || x1 == x0) return Phi;
    State s{Phi(0, 0), Phi(0, 1), Phi(1, 0), Phi(1, 1)};
    auto rhs = [&](const State& z, State& dz, double x) {
        Mat2 G = generator(bg.at(x), g, lam);
        Mat2 Z;
        Z << z[0], z[1], z[2], z[3];
        Mat2 D = G * Z;
        dz = {D(0, 0), D(0, 1), D(1, 0), D(1, 1)};
    };
    ode::integrate_adaptive(ode::make_controlled(tol, tol, ode::runge_kutta_dopri5<State>()), rhs, s, x0, x1,
                            (x1 - x0) / 16.0);
    Mat2 out;
    out << s[0], s[1], s[2], s[3];
    return out;
}

double hermite(double t, double h, double f0, double f1, double d0, double d1) {
    double t2 = t * t, t3 = t2 * t;
    return (2 * t3 - 3 * t2 + 1) * f0 + (t3 - 2 * t2 + t) * h * d0 + (-2 * t3 + 3 * t2) * f1 + (t3 - t2) * h * d1;
}

}  // namespace

LocalCoeffs local_coeffs(const BgPoint& b, double g, double lam) {
    LocalCoeffs c{};
    const double M2 = b.M2, M4 = M2 * M2, u = b.u, rho = b.rho, p = b.p, m = b.m, E = b.E, A = b.A;
    const double c2 = b.c2, c4 = c2 * c2, c6 = c4 * c2, u3 = u * u * u, gm = g - 1.0, om = 1.0 - M2;
    const double rg = std::pow(rho, gm);

    c.a1 = -(m / u) * (0.5 - 1.0 / (gm * M2));
    c.a2 = -m * E * rg / (gm * u3);
    c.a3 = -m * E / (rho * u3);

    c.b1 = g * m * A / u3 * (1.0 + 0.5 * gm * M2);
    c.b2 = -(m / u) * (g + 0.5 - 0.5 * gm * gm * M2 + 1.0 / (gm * M2));
    c.b3 = -g * m * A / (u3 * rho) * (1.0 + 0.5 * gm * M2 + 0.5 * gm * gm * M4);

    c.c1 = om / (rho * u);
    c.c2 = -lam * m * (gm * M2 + 2.0) * (M4 + gm * M2 + 1.0) / (2.0 * rho * c2 * M2 * om);
    c.c3 = lam * m * (2.0 + (3.0 * g - 1.0) * M2 - gm * M4) / (2.0 * u * u * om);
    c.c4 = -lam * m * rg * (gm * M2 + 2.0) * (1.0 + (2.0 * g - 1.0) * M2 - gm * M4) / (2.0 * gm * c2 * M2 * om);

    const double dp = b.dp, d2p = b.d2p, dm = b.dm, lam2 = lam * lam, m2 = m * m;
    const double k4 = 1.0 / (g * M4);
    auto& d = c.d;
    d[0] = 0.0;
    d[1] = -2.0 * u * u / p * (1.0 + k4) * dp + lam * m * c2 / u * (0.5 * gm * gm * M4 + 0.5 * gm * M2 - 1.0);
    d[2] = u * u / (p * p) * (1.0 + k4) * dp * dp - lam * g * u * (1.0 + 0.5 * gm * M2) * dm +
           g * lam2 * m2 * (0.25 * gm * gm * M4 - 1.0);
    d[3] = 2.0 * d2p - 2.0 / p * (1.0 - k4) * dp * dp - lam * gm * rho * u * dm;
    d[4] = lam * m * (3.0 * gm * gm * M4 + gm * M2 + 2.0) / (2.0 * M2) * dp - 0.5 * g * p * (lam * gm * M2 + 2.0 * lam) * dm +
           g * lam2 * gm * gm * m2 * u3 * p / c4;
    d[5] = -(g + 1.0) / gm * d2p + 2.0 / (gm * p) * (1.0 - (1.0 + gm * M2) * k4) * dp * dp -
           lam * m / u * dp * (1.0 + 0.5 * gm * gm * M4) + lam * rho * u * (1.0 + 0.5 * gm * M2) * dm -
           0.5 * g * lam2 * gm * gm * m2 * u3 * u * p / c6;
    const double k = lam * g * m * p / pi;
    d[6] = k * c.c1;
    d[7] = k * c.c2;
    d[8] = k * c.c3;
    d[9] = k * c.c4;

    auto& e = c.e;
    e[0] = 0.0;
    e[1] = M2 - 1.0;
    e[2] = d[1] / c2;
    const double q = gm * d[5] - d[4] / u;
    e[3] = d[2] / c2 + q / (rho * c2);
    e[4] = d[3] / c2 + d[4] / (u * c2);
    e[5] = rg / (gm * c2) * q;
    for (int i = 6; i <= 9; ++i) e[i] = d[i] / c2;
    return c;
}

double robin_gamma0(const BgPoint& b, double g) {
    const double M2 = b.M2, M4 = M2 * M2, om = 1.0 - M2;
    return -b.m * b.u * ((g - 1.0) * M2 + 2.0) * (M4 + (g - 1.0) * M2 + 1.0) / (2.0 * b.c2 * M2 * om * om);
}

DerivedCoeffs derive(const LocalCoeffs& c, const Mat2& Phi) {
    DerivedCoeffs dc{};
    dc.Phi = Phi;
    dc.Phi_inv = Phi.inverse();
    Eigen::Vector2d ab = dc.Phi_inv * Eigen::Vector2d(c.a3, c.b3);
    dc.a4 = ab(0);
    dc.b4 = ab(1);
    Eigen::RowVector2d e45(c.e[4], c.e[5]), e89(c.e[8], c.e[9]);
    Eigen::RowVector2d r1 = e45 * Phi, r2 = e89 * Phi;
    dc.e10 = r1(0);
    dc.e11 = r1(1);
    dc.e12 = r2(0);
    dc.e13 = r2(1);
    return dc;
}

TildeE tilde_e(const LocalCoeffs& c, const DerivedCoeffs& dc, int m, double lam) {
    if (m == 0)
        return {c.e[1], c.e[2] + pi * c.e[6], c.e[3] + pi * c.e[7], lam * (dc.e10 + pi * dc.e12),
                lam * (dc.e11 + pi * dc.e13)};
    return {c.e[1], c.e[2], c.e[3] + double(m) * m, lam * dc.e10, lam * dc.e11};
}

std::vector<Mat2> fundamental_2x2(const Background& bg, const std::vector<double>& xs, double tol) {
    std::vector<Mat2> out;
    Mat2 Phi = Mat2::Identity();
    double x = 0.0;
    for (double xi : xs) {
        Phi = integrate_phi(bg, Phi, x, xi, tol);
        x = xi;
        out.push_back(Phi);
    }
    return out;
}

Mat2 fundamental_2x2_fixed(const Background& bg, double x_end, int n) {
    const double g = bg.gas().gamma, lam = bg.gas().lambda, h = x_end / n;
    Mat2 Z = Mat2::Identity();
    for (int i = 0; i < n; ++i) {
        double x = i * h;
        Mat2 G0 = generator(bg.at(x), g, lam), Gh = generator(bg.at(x + 0.5 * h), g, lam),
             G1 = generator(bg.at(x + h), g, lam);
        Mat2 k1 = G0 * Z, k2 = Gh * (Z + 0.5 * h * k1), k3 = Gh * (Z + 0.5 * h * k2), k4 = G1 * (Z + h * k3);
        Z += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    return Z;
}

CoeffTables::CoeffTables(const Background& bg, const BackgroundProfile& prof, int refine)
    : gamma_(bg.gas().gamma), lambda_(bg.gas().lambda), refine_(refine), prof_(prof), bg_(bg) {
    const int n = int(prof.nodes.size());
    gamma0_ = robin_gamma0(prof.nodes[0], gamma_);
    std::vector<Mat2> phis = fundamental_2x2(bg, prof.x);
    for (int i = 0; i < n; ++i) {
        local.push_back(local_coeffs(prof.nodes[i], gamma_, lambda_));
        derived.push_back(derive(local.back(), phis[i]));
    }
    const int sub = 2 * refine;
    const double dx = prof.x[1] - prof.x[0];
    for (int i = 0; i + 1 < n; ++i) {
        Mat2 Phi = phis[i];
        double x = prof.x[i];
        fine.push_back({x, local[i], derived[i]});
        for (int s = 1; s < sub; ++s) {
            double xs = prof.x[i] + dx * s / sub;
            Phi = integrate_phi(bg, Phi, x, xs, 1e-12);
            x = xs;
            BgPoint b = bg.at(xs);
            LocalCoeffs c = local_coeffs(b, gamma_, lambda_);
            fine.push_back({xs, c, derive(c, Phi)});
        }
    }
    fine.push_back({prof.x[n - 1], local[n - 1], derived[n - 1]});
}

ModeSample CoeffTables::interpolate(double xq) const {
    const auto& xs = prof_.x;
    std::size_t n = xs.size();
    std::size_t i = std::upper_bound(xs.begin(), xs.end(), xq) - xs.begin();
    i = std::clamp<std::size_t>(i, 1, n - 1) - 1;
    double h = xs[i + 1] - xs[i], t = (xq - xs[i]) / h;
    BgPoint b = prof_.interpolate(xq, gamma_, lambda_, bg_.gas().mass);
    LocalCoeffs c = local_coeffs(b, gamma_, lambda_);
    Mat2 P0 = derived[i].Phi, P1 = derived[i + 1].Phi;
    Mat2 D0 = generator(prof_.nodes[i], gamma_, lambda_) * P0, D1 = generator(prof_.nodes[i + 1], gamma_, lambda_) * P1;
    Mat2 Phi;
    for (int r = 0; r < 2; ++r)
        for (int s = 0; s < 2; ++s) Phi(r, s) = hermite(t, h, P0(r, s), P1(r, s), D0(r, s), D1(r, s));
    return {xq, c, derive(c, Phi)};
}

ModeSample CoeffTables::evaluate(double xq) const {
    const auto& xs = prof_.x;
    std::size_t i = std::upper_bound(xs.begin(), xs.end(), xq) - xs.begin();
    i = std::clamp<std::size_t>(i, 1, xs.size()) - 1;
    Mat2 Phi = integrate_phi(bg_, derived[i].Phi, xs[i], xq, 1e-13);
    BgPoint b = bg_.at(xq);
    LocalCoeffs c = local_coeffs(b, gamma_, lambda_);
    return {xq, c, derive(c, Phi)};
}

}  // namespace duct
