#include <cmath>
#include <numbers>

#include "doctest.h"
#include "duct/residuals.hpp"
#include "duct/transport.hpp"

using namespace duct;
using doctest::Approx;
using std::numbers::pi;

namespace {

std::vector<DerivedCoeffs> identity_generator(int nx) {
    DerivedCoeffs d{};
    d.Phi = d.Phi_inv = Mat2::Identity();
    return std::vector<DerivedCoeffs>(nx, d);
}

InletPair cos_inlet() {
    return [](double y) { return Eigen::Vector2d(std::cos(y), 0.5 * std::cos(2 * y)); };
}

}  // namespace

TEST_CASE("straight characteristics") {
    Grid g(0.5, 21, 17);
    auto map = trace_characteristics([](double, double) { return 0.0; }, g);
    for (int i = 0; i < g.nx; ++i)
        for (int j = 0; j < g.ny; ++j) CHECK(map.xi(i, j) == g.y(j));
    Field u = Field::Constant(21, 17, 2.0), v = g.zeros();
    auto m2 = trace_characteristics(u, v, g);
    CHECK(sup(m2.xi - map.xi) == 0.0);
    u(3, 4) = 0.0;
    CHECK_THROWS_AS(trace_characteristics(u, v, g), Error);
}

TEST_CASE("closed-form characteristic map") {
    const double alpha = 0.7;
    Grid g(0.6, 31, 33);
    auto map = trace_characteristics([&](double, double y) { return alpha * std::sin(y); }, g);
    double err = 0;
    for (int i = 0; i < g.nx; ++i) {
        CHECK(std::abs(map.xi(i, 0)) <= 1e-12);
        CHECK(std::abs(map.xi(i, g.ny - 1) - pi) <= 1e-12);
        for (int j = 1; j + 1 < g.ny; ++j) {
            double ref = 2 * std::atan(std::tan(g.y(j) / 2) * std::exp(-alpha * g.x(i)));
            err = std::max(err, std::abs(map.xi(i, j) - ref));
        }
    }
    CHECK(err <= 1e-8);
    // Paths stay inside and do not cross.
    for (int i = 0; i < g.nx; i += 5)
        for (int k = 0; k <= i; ++k)
            for (int j = 1; j < g.ny; ++j) {
                CHECK(map.paths[i](k, j) >= map.paths[i](k, j - 1));
                CHECK(map.paths[i](k, j) <= pi);
                CHECK(map.paths[i](k, j) >= 0.0);
            }
    for (int j = 0; j < g.ny; ++j) CHECK(map.xi(0, j) == g.y(j));
}

TEST_CASE("semigroup property") {
    auto w = [](double x, double y) { return 0.3 * std::sin(y) * (1 + x); };
    for (double y : {0.4, 1.3, 2.9}) {
        double direct = trace_point(w, 0.8, y, 0.0);
        double mid = trace_point(w, 0.8, y, 0.35);
        CHECK(trace_point(w, 0.35, mid, 0.0) == Approx(direct).epsilon(1e-8));
    }
}

TEST_CASE("Cauchy solve closed forms") {
    const double alpha = 0.4;
    Grid g(0.5, 41, 33);
    auto map = trace_characteristics([&](double, double y) { return alpha * std::sin(y); }, g);
    auto id = identity_generator(g.nx);

    auto adv = solve_cauchy_system(map, id, g.zeros(), g.zeros(), cos_inlet());
    for (int i = 0; i < g.nx; ++i)
        for (int j = 0; j < g.ny; ++j) {
            CHECK(adv.E(i, j) == Approx(std::cos(map.xi(i, j))).epsilon(1e-14).scale(1));
            CHECK(adv.A(i, j) == Approx(0.5 * std::cos(2 * map.xi(i, j))).epsilon(1e-14).scale(1));
        }

    auto src = solve_cauchy_system(map, id, Field::Constant(g.nx, g.ny, 2.0), Field::Constant(g.nx, g.ny, -1.0),
                                   cos_inlet());
    for (int i = 0; i < g.nx; ++i)
        for (int j = 0; j < g.ny; ++j) {
            CHECK(src.E(i, j) == Approx(std::cos(map.xi(i, j)) + 2 * g.x(i)).epsilon(1e-12));
            CHECK(src.A(i, j) == Approx(0.5 * std::cos(2 * map.xi(i, j)) - g.x(i)).epsilon(1e-12).scale(1));
        }

    // Diagonal constant generator with straight characteristics.
    auto straight = trace_characteristics([](double, double) { return 0.0; }, g);
    std::vector<DerivedCoeffs> diag(g.nx);
    for (int i = 0; i < g.nx; ++i) {
        diag[i].Phi = Mat2::Zero();
        diag[i].Phi(0, 0) = std::exp(0.8 * g.x(i));
        diag[i].Phi(1, 1) = std::exp(-0.3 * g.x(i));
        diag[i].Phi_inv = diag[i].Phi.inverse();
    }
    auto ex = solve_cauchy_system(straight, diag, g.zeros(), g.zeros(), cos_inlet());
    for (int i = 0; i < g.nx; ++i)
        for (int j = 0; j < g.ny; ++j) {
            CHECK(ex.E(i, j) == Approx(std::exp(0.8 * g.x(i)) * std::cos(g.y(j))).epsilon(1e-13).scale(1));
            CHECK(ex.A(i, j) == Approx(std::exp(-0.3 * g.x(i)) * 0.5 * std::cos(2 * g.y(j))).epsilon(1e-13).scale(1));
        }
}

TEST_CASE("enthalpy and entropy transport") {
    InletSpec in;
    in.M0 = 0.5;
    in.E0 = 10.5;
    const double l = 0.2;
    const int nx = 41, ny = 33;

    SUBCASE("lambda zero") {
        GasParams gas;
        Background bg(in, gas);
        auto prof = background_profile(in, gas, l, nx);
        CoeffTables ct(bg, prof);
        auto U = broadcast_background(prof, ny, gas.gamma);
        auto zero = solve_enthalpy_entropy(U, U.grid.zeros(), U.grid.zeros(), U.grid.zeros(), ct,
                                           [](double) { return Eigen::Vector2d::Zero().eval(); });
        CHECK(sup(zero.E) == 0.0);
        CHECK(sup(zero.A) == 0.0);
        auto c = solve_enthalpy_entropy(U, U.grid.zeros(), U.grid.zeros(), U.grid.zeros(), ct,
                                        [](double y) { return Eigen::Vector2d(std::cos(y), 0.0); });
        for (int i = 0; i < nx; ++i)
            for (int j = 0; j < ny; ++j) CHECK(c.E(i, j) == Approx(std::cos(U.grid.y(j))).epsilon(1e-14).scale(1));
    }
    SUBCASE("fundamental matrix") {
        GasParams gas;
        gas.lambda = 1.0;
        Background bg(in, gas);
        auto prof = background_profile(in, gas, l, nx);
        CoeffTables ct(bg, prof);
        auto U = broadcast_background(prof, ny, gas.gamma);
        auto sol = solve_enthalpy_entropy(U, U.grid.zeros(), U.grid.zeros(), U.grid.zeros(), ct, cos_inlet());
        auto Phis = fundamental_2x2(bg, U.grid.xs());
        double err = 0;
        for (int i = 0; i < nx; ++i)
            for (int j = 0; j < ny; ++j) {
                Eigen::Vector2d ref = Phis[i] * cos_inlet()(U.grid.y(j));
                err = std::max({err, std::abs(sol.E(i, j) - ref(0)), std::abs(sol.A(i, j) - ref(1))});
            }
        CHECK(err <= 1e-8);

        // Linearity in inlet and source.
        Field s1(nx, ny), s2(nx, ny);
        for (int i = 0; i < nx; ++i)
            for (int j = 0; j < ny; ++j) {
                s1(i, j) = std::cos(U.grid.y(j)) * U.grid.x(i);
                s2(i, j) = 1 + std::cos(3 * U.grid.y(j));
            }
        auto a = solve_enthalpy_entropy(U, s1, s2, s1, ct, cos_inlet());
        auto b = solve_enthalpy_entropy(U, 2 * s1, 2 * s2, 2 * s1, ct,
                                        [](double y) { return (2 * cos_inlet()(y)).eval(); });
        CHECK(sup(b.E - 2 * a.E) <= 1e-10 * sup(b.E));
        CHECK(sup(b.A - 2 * a.A) <= 1e-10 * sup(b.A));
    }
}

TEST_CASE("wall symmetry propagates") {
    const double alpha = 0.5;
    Grid g(0.5, 41, 65);
    auto map = trace_characteristics([&](double x, double y) { return alpha * std::sin(y) * (1 + x); }, g);
    auto id = identity_generator(g.nx);
    Field s(g.nx, g.ny);
    for (int i = 0; i < g.nx; ++i)
        for (int j = 0; j < g.ny; ++j) s(i, j) = std::cos(g.y(j)) * (1 + g.x(i));
    auto sol = solve_cauchy_system(map, id, s, 0.5 * s, cos_inlet());
    CHECK(wall_derivative_check(sol.E, 1, g).ok());
    CHECK(wall_derivative_check(sol.A, 1, g).ok());
}
