#include <cmath>
#include <numbers>

#include "doctest.h"
#include "duct/elliptic.hpp"

using namespace duct;
using doctest::Approx;
using std::numbers::pi;

namespace {

InletSpec inlet() {
    InletSpec in;
    in.M0 = 0.5;
    in.E0 = 10.5;
    return in;
}

struct Setup {
    GasParams gas;
    Background bg;
    BackgroundProfile prof;
    CoeffTables ct;
    Grid grid;
    Setup(double lam, double l, int nx, int ny)
        : gas(make(lam)), bg(inlet(), gas), prof(background_profile(inlet(), gas, l, nx)), ct(bg, prof), grid(l, nx, ny) {}
    static GasParams make(double lam) {
        GasParams g;
        g.lambda = lam;
        return g;
    }
};

Eigen::VectorXd sample_y(int ny, double (*f)(double)) {
    Eigen::VectorXd v(ny);
    for (int j = 0; j < ny; ++j) v(j) = f(pi * j / (ny - 1));
    return v;
}

}  // namespace

TEST_CASE("cosine analysis and synthesis") {
    const int ny = 65, N = 16;
    auto c2 = cosine_analyze(sample_y(ny, [](double y) { return std::cos(2 * y); }), N);
    for (int m = 0; m <= N; ++m) CHECK(std::abs(c2(m) - (m == 2 ? 1.0 : 0.0)) <= 1e-12);
    auto c1 = cosine_analyze(Eigen::VectorXd::Ones(ny), N);
    CHECK(c1(0) == Approx(2.0).epsilon(1e-14));
    for (int m = 1; m <= N; ++m) CHECK(std::abs(c1(m)) <= 1e-12);
    auto f = sample_y(ny, [](double y) { return 3 + std::cos(y) - 0.5 * std::cos(4 * y); });
    auto back = cosine_synthesize(cosine_analyze(f, N), ny);
    CHECK((back - f).cwiseAbs().maxCoeff() <= 1e-12);
    CHECK_THROWS_AS(cosine_analyze(sample_y(ny, [](double y) { return y; }), N), Error);
}

TEST_CASE("zero problem") {
    Setup s(1.0, 0.2, 41, 33);
    EllipticProblem pb{s.grid.zeros(), Eigen::VectorXd::Zero(33), Eigen::VectorXd::Zero(33), {}};
    auto sol = solve_L1(pb, s.ct, s.grid, 16);
    CHECK(sup(sol.p) == 0.0);
    CHECK(sup(apply_L1_residual(sol.p, pb, s.ct, s.grid)) == 0.0);
}

TEST_CASE("constant-coefficient manufactured solution") {
    const double l = 0.3, kappa = 1 / std::sqrt(0.75);
    Setup s(0.0, l, 101, 65);
    Field p(101, 65);
    for (int i = 0; i < 101; ++i)
        for (int j = 0; j < 65; ++j) p(i, j) = std::cos(s.grid.y(j)) * std::cos(kappa * s.grid.x(i));
    EllipticProblem pb;
    pb.h = 2 * p;
    pb.g0 = Eigen::VectorXd::Zero(65);
    pb.gl = p.row(100).transpose();
    auto sol = solve_L1(pb, s.ct, s.grid, 16);
    CHECK(sup(sol.p - p) < 1e-7);
    // Wall Neumann condition holds through the basis.
    CHECK(sup(sol.spectrum.row(0)) >= 0.0);
}

TEST_CASE("mode decoupling") {
    Setup s(1.0, 0.2, 61, 65);
    Field h(61, 65);
    for (int i = 0; i < 61; ++i)
        for (int j = 0; j < 65; ++j) h(i, j) = (1 + s.grid.x(i)) * std::cos(3 * s.grid.y(j));
    EllipticProblem pb{h, Eigen::VectorXd::Zero(65), Eigen::VectorXd::Zero(65), {}};
    auto sol = solve_L1(pb, s.ct, s.grid, 16);
    auto spec = analyze_field(sol.p, 16);
    double on = spec.row(3).cwiseAbs().maxCoeff(), off = 0;
    for (int m = 0; m <= 16; ++m)
        if (m != 3) off = std::max(off, spec.row(m).cwiseAbs().maxCoeff());
    CHECK(on > 1e-3);
    CHECK(off <= 1e-10);
    // y-integral terms vanish for m >= 1
    CHECK(integrate_y(sol.p, s.grid.dy()).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("linearity of solve_L1") {
    Setup s(1.0, 0.2, 41, 33);
    Field h(41, 33);
    for (int i = 0; i < 41; ++i)
        for (int j = 0; j < 33; ++j) h(i, j) = std::exp(s.grid.x(i)) * (1 + std::cos(s.grid.y(j)));
    Eigen::VectorXd g0 = sample_y(33, [](double y) { return std::cos(2 * y); });
    Eigen::VectorXd gl = sample_y(33, [](double y) { return 0.5 + std::cos(y); });
    auto a = solve_L1({h, g0, gl, {}}, s.ct, s.grid, 16);
    auto b = solve_L1({-3 * h, -3 * g0, -3 * gl, {}}, s.ct, s.grid, 16);
    CHECK(sup(b.p + 3 * a.p) <= 1e-10 * sup(b.p));
}

TEST_CASE("residual convergence order") {
    const double l = 0.3, kappa = 1 / std::sqrt(0.75);
    double r[2];
    for (int k = 0; k < 2; ++k) {
        int nx = 41 << k, ny = 33 + 32 * k;
        Setup s(0.0, l, nx, ny);
        Field p(nx, ny);
        for (int i = 0; i < nx; ++i)
            for (int j = 0; j < ny; ++j) p(i, j) = std::cos(s.grid.y(j)) * std::cos(kappa * s.grid.x(i)) + s.grid.x(i) * s.grid.x(i);
        Field h = 2 * p;
        for (int i = 0; i < nx; ++i) h.row(i).array() += -1.5 - 2 * s.grid.x(i) * s.grid.x(i);
        EllipticProblem pb{h, {}, {}, {}};
        r[k] = sup(apply_L1_residual(p, pb, s.ct, s.grid));
    }
    CHECK(r[0] / r[1] >= 3.5);
}

TEST_CASE("full operator") {
    Setup s(1.0, 0.2, 61, 49);
    const int nx = 61, ny = 49;
    Field h(nx, ny);
    for (int i = 0; i < nx; ++i)
        for (int j = 0; j < ny; ++j) h(i, j) = 1 + s.grid.x(i) * std::cos(s.grid.y(j)) + std::cos(2 * s.grid.y(j));
    Eigen::VectorXd g0 = sample_y(ny, [](double y) { return 0.2 * std::cos(y); });
    Eigen::VectorXd gl = sample_y(ny, [](double y) { return 0.1 + 0.3 * std::cos(3 * y); });

    SUBCASE("empty L2 is one iteration") {
        auto a = solve_full_L({h, g0, gl, {}}, s.ct, s.grid, 24, 1e-12, 30);
        auto b = solve_L1({h, g0, gl, {}}, s.ct, s.grid, 24);
        CHECK(a.iterations == 1);
        CHECK(sup(a.p - b.p) == 0.0);
    }
    SUBCASE("manufactured by forward application") {
        auto pstar = solve_L1({h, g0, gl, {}}, s.ct, s.grid, 24).p;
        auto coeffs = [&](double amp) {
            L2Coeffs k;
            k.kxx = k.kyy_sound = k.kyy_v = k.kxy = s.grid.zeros();
            for (int i = 0; i < nx; ++i)
                for (int j = 0; j < ny; ++j) {
                    double x = s.grid.x(i) / s.grid.l, y = s.grid.y(j);
                    k.kxx(i, j) = amp * std::cos(y) * x;
                    k.kyy_sound(i, j) = 0.5 * amp * (1 - x);
                    k.kyy_v(i, j) = 0.5 * amp * x * std::cos(2 * y);
                    k.kxy(i, j) = amp * std::sin(y) * x;
                }
            return k;
        };
        L2Coeffs k = coeffs(0.05);
        CHECK(k.sup_norm() == Approx(0.05).epsilon(0.05));
        EllipticProblem pb{h + apply_L2(pstar, k, s.grid), g0, gl, k};
        auto sol = solve_full_L(pb, s.ct, s.grid, 24, 1e-12, 60);
        CHECK(sup(sol.p - pstar) <= 1e-6 * (1 + sup(pstar)));
        CHECK(sol.iterations > 1);

        // Contraction shrinks with the L2 amplitude.
        double rates[2];
        int idx = 0;
        for (double amp : {1e-2, 1e-3}) {
            L2Coeffs ka = coeffs(amp);
            auto r = solve_full_L({h + apply_L2(pstar, ka, s.grid), g0, gl, ka}, s.ct, s.grid, 24, 1e-13, 60);
            REQUIRE(r.changes.size() >= 2);
            rates[idx++] = r.changes[1] / r.changes[0];
        }
        CHECK(rates[0] / rates[1] == Approx(10.0).epsilon(0.3));

        L2Coeffs big = coeffs(0.5);
        CHECK_THROWS_AS(solve_full_L({h, g0, gl, big}, s.ct, s.grid, 24, 1e-12, 60), Error);
    }
}
