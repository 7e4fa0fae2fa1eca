#include <cmath>
#include <numbers>
#include <random>

#include <boost/math/quadrature/gauss.hpp>

#include "doctest.h"
#include "duct/tangential.hpp"

using namespace duct;
using doctest::Approx;
using std::numbers::pi;

namespace {

Eigen::VectorXd sample(int ny, const std::function<double(double)>& f) {
    Eigen::VectorXd v(ny);
    for (int j = 0; j < ny; ++j) v(j) = f(pi * j / (ny - 1));
    return v;
}

std::vector<LocalCoeffs> tables(double lam, int nx) {
    InletSpec in;
    in.M0 = 0.5;
    in.E0 = 10.5;
    GasParams g;
    g.lambda = lam;
    auto prof = background_profile(in, g, 0.2, nx);
    std::vector<LocalCoeffs> c;
    for (auto& b : prof.nodes) c.push_back(local_coeffs(b, 1.4, lam));
    return c;
}

}  // namespace

TEST_CASE("compatibility defect") {
    const int ny = 65;
    CHECK(compatibility_defect(Eigen::VectorXd::Zero(ny), 0, 0) == 0.0);
    CHECK(std::abs(compatibility_defect(sample(ny, [](double y) { return std::cos(y); }), 0, 0)) <= 1e-14);
    CHECK(compatibility_defect(Eigen::VectorXd::Ones(ny), 0, 0) == Approx(pi).epsilon(1e-14));
    CHECK(compatibility_defect(Eigen::VectorXd::Ones(ny), 1.0, 1.0 + pi) == Approx(0.0).scale(1));
}

TEST_CASE("cross-section BVP") {
    const int ny = 257;
    CHECK(solve_crosssection_bvp(Eigen::VectorXd::Zero(ny), 0).cwiseAbs().maxCoeff() == 0.0);
    auto v = solve_crosssection_bvp(sample(ny, [](double y) { return std::cos(y); }), 0);
    auto ref = sample(ny, [](double y) { return std::sin(y); });
    double h = pi / (ny - 1);
    CHECK((v - ref).cwiseAbs().maxCoeff() <= h * h / 8);
    CHECK(v(0) == 0.0);
    CHECK(std::abs(v(ny - 1)) <= 1e-14);
    auto w = solve_crosssection_bvp(sample(ny, [](double y) { return std::cos(y); }), 0.25, 0.25);
    CHECK(w(0) == 0.25);
    try {
        solve_crosssection_bvp(Eigen::VectorXd::Ones(ny), 0);
        FAIL("expected incompatibility");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::numerical);
        CHECK(std::string(e.what()).find("3.14159") != std::string::npos);
    }
}

TEST_CASE("k vanishes on zero perturbations") {
    const int nx = 21, ny = 33;
    Grid g(0.2, nx, ny);
    auto c = tables(1.0, nx);
    auto k = compute_k(g.zeros(), g.zeros(), g.zeros(), g.zeros(), g.zeros(), c, g);
    CHECK(k.cwiseAbs().maxCoeff() == 0.0);
    CHECK(sup(assemble_v_rhs(g.zeros(), g.zeros(), g.zeros(), g.zeros(), g.zeros(), c, g)) == 0.0);
}

TEST_CASE("k against Gauss-Legendre quadrature") {
    const int nx = 11, ny = 65;
    Grid g(0.2, nx, ny);
    auto c = tables(1.0, nx);
    auto fpx = [](double x, double y) { return x + std::cos(y) + 0.3 * std::cos(4 * y); };
    auto fp = [](double x, double y) { return 1 - x * std::cos(2 * y); };
    auto fE = [](double, double y) { return 0.5 + std::cos(3 * y); };
    auto fA = [](double x, double y) { return x * x * (2 + std::cos(y)); };
    auto fv = [](double x, double y) { return std::cos(5 * y) - x; };
    auto F = [&](auto f) {
        Field r(nx, ny);
        for (int i = 0; i < nx; ++i)
            for (int j = 0; j < ny; ++j) r(i, j) = f(g.x(i), g.y(j));
        return r;
    };
    auto k = compute_k(F(fpx), F(fp), F(fE), F(fA), F(fv), c, g);
    for (int i = 0; i < nx; ++i) {
        double x = g.x(i);
        auto integrand = [&](double y) {
            return c[i].c1 * fpx(x, y) + c[i].c2 * fp(x, y) + c[i].c3 * fE(x, y) + c[i].c4 * fA(x, y) + fv(x, y);
        };
        double ref = boost::math::quadrature::gauss<double, 30>::integrate(integrand, 0.0, pi) / pi;
        CHECK(k(i) == Approx(ref).epsilon(1e-10).scale(1));
    }
}

TEST_CASE("assembled rhs is compatible for arbitrary fields") {
    const int nx = 17, ny = 41;
    Grid g(0.2, nx, ny);
    auto c = tables(1.0, nx);
    std::mt19937_64 rng(11);
    std::normal_distribution<double> d(0.0, 1.0);
    for (int trial = 0; trial < 20; ++trial) {
        auto R = [&] {
            Field f(nx, ny);
            for (int i = 0; i < nx; ++i)
                for (int j = 0; j < ny; ++j) f(i, j) = d(rng) * 10;
            return f;
        };
        Field rhs = assemble_v_rhs(R(), R(), R(), R(), R(), c, g);
        for (int i = 0; i < nx; ++i) CHECK(std::abs(compatibility_defect(rhs.row(i).transpose(), 0, 0)) <= 1e-12);
        Field s = subtract_mean_y(R(), g);
        CHECK(integrate_y(s, g.dy()).cwiseAbs().maxCoeff() <= 1e-12);
    }
}

TEST_CASE("v linear part") {
    const int nx = 5, ny = 9;
    Grid g(0.2, nx, ny);
    auto c = tables(1.0, nx);
    Field one = Field::Ones(nx, ny);
    Field lp = v_linear_part(one, 2 * one, 3 * one, 4 * one, c);
    for (int i = 0; i < nx; ++i)
        CHECK(lp(i, 4) == Approx(c[i].c1 + 2 * c[i].c2 + 3 * c[i].c3 + 4 * c[i].c4));
}
