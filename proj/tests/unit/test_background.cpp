#include <cmath>

#include "doctest.h"
#include "duct/background.hpp"

using namespace duct;
using doctest::Approx;

namespace {
InletSpec unit_inlet() {
    InletSpec in;
    in.M0 = 0.5;
    in.p0 = 1.0;
    in.E0 = 10.5;
    return in;
}
GasParams gas_with(double lam) {
    GasParams g;
    g.gamma = 1.4;
    g.lambda = lam;
    return g;
}
}  // namespace

TEST_CASE("flow function") {
    CHECK(flow_function_F(1.0, 1.4) == Approx(2.0622656).epsilon(1e-6));
    CHECK(flow_function_F(0.5, 1.4) == Approx(1.7930270).epsilon(1e-6));
    double prev = -1e300;
    for (int i = 1; i < 100; ++i) {
        double F = flow_function_F(i / 100.0, 1.4);
        CHECK(F > prev);
        prev = F;
    }
    CHECK_THROWS_AS(flow_function_F(0.0, 1.4), Error);
}

TEST_CASE("flow function inversion") {
    CHECK(invert_F(flow_function_F(0.5, 1.4), 1.4) == Approx(0.5).epsilon(1e-10));
    CHECK(invert_F(flow_function_F(1.0, 1.4), 1.4) == Approx(1.0).epsilon(1e-10));
    CHECK_THROWS_AS(invert_F(flow_function_F(1.0, 1.4) + 0.1, 1.4), Error);
    for (double M = 0.05; M < 1.0; M += 0.05) CHECK(std::abs(invert_F(flow_function_F(M, 1.4), 1.4) - M) < 1e-10);
}

TEST_CASE("critical length") {
    CHECK(critical_length(unit_inlet(), gas_with(1.0)) == Approx(0.418816).epsilon(1e-5 / 0.418816));
    CHECK(std::isinf(critical_length(unit_inlet(), gas_with(0.0))));
    GasParams g2 = gas_with(1.0);
    g2.mass = MassProfile::constant(2.0);
    CHECK(critical_length(unit_inlet(), g2) == Approx(0.5 * critical_length(unit_inlet(), gas_with(1.0))));
    double lm = critical_length(unit_inlet(), gas_with(-0.5));
    CHECK(std::isfinite(lm));
    CHECK(lm > 0);
}

TEST_CASE("near-critical Mach") {
    GasParams g = gas_with(1.0);
    double ls = critical_length(unit_inlet(), g);
    Background bg(unit_inlet(), g);
    CHECK(std::sqrt(bg.at(ls * (1 - 1e-6)).M2) > 0.999);
}

TEST_CASE("profile basics") {
    auto in = unit_inlet();
    auto p0 = background_profile(in, gas_with(0.0), 1.0, 21);
    for (auto& b : p0.nodes) {
        CHECK(b.p == Approx(p0.nodes[0].p).epsilon(1e-14));
        CHECK(b.u == Approx(p0.nodes[0].u).epsilon(1e-14));
    }
    auto g = gas_with(1.0);
    auto p = background_profile(in, g, 0.3, 50);
    auto s = resolve_inlet(in, 1.4);
    CHECK(p.nodes[0].u == s.u0);
    CHECK(p.nodes[0].p == s.p0);
    CHECK(p.nodes[0].E == s.E0);
    double inv = p.nodes[0].p * (1.4 * p.nodes[0].M2 + 1);
    for (auto& b : p.nodes) {
        CHECK(b.p * (1.4 * b.M2 + 1) == Approx(inv).epsilon(1e-10));
        CHECK(b.dM2 > 0);
        CHECK(b.M2 < 1);
    }
    CHECK_THROWS_AS(background_profile(in, g, 0.5, 10), Error);
}

TEST_CASE("profile against ODE oracle") {
    auto in = unit_inlet();
    for (double lam : {-0.5, 0.0, 1.0}) {
        auto g = gas_with(lam);
        double l = lam > 0 ? 0.3 : 0.4;
        auto a = background_profile(in, g, l, 200);
        auto b = background_ode_oracle(in, g, l, 200);
        double err = 0;
        for (size_t i = 0; i < a.nodes.size(); ++i) {
            auto rel = [](double x, double y) { return std::abs(x - y) / std::abs(y); };
            err = std::max({err, rel(a.nodes[i].u, b.nodes[i].u), rel(a.nodes[i].rho, b.nodes[i].rho),
                            rel(a.nodes[i].p, b.nodes[i].p), rel(a.nodes[i].E, b.nodes[i].E),
                            rel(a.nodes[i].A, b.nodes[i].A), rel(a.nodes[i].M2, b.nodes[i].M2)});
            // Mass flux identity along the oracle trajectory.
            double dflux = b.nodes[i].drho * b.nodes[i].u + b.nodes[i].rho * b.nodes[i].du;
            CHECK(dflux == Approx(lam * b.nodes[i].rho * b.nodes[i].m).epsilon(1e-10).scale(1.0));
        }
        CHECK(err < 1e-8);
    }
}

TEST_CASE("monotonicity tables") {
    auto in = unit_inlet();
    for (double lam : {1.0, -0.5}) {
        auto g = gas_with(lam);
        double l = 0.95 * critical_length(in, g);
        auto p = background_profile(in, g, l, 400);
        auto rep = monotonicity_report(p, g);
        CHECK(rep.ok());
    }
    // Mach interval crossing the density threshold for lambda > 0.
    auto g = gas_with(1.0);
    auto p = background_profile(in, g, 0.999 * critical_length(in, g), 400);
    CHECK(std::sqrt(p.nodes.back().M2) > std::sqrt(2 / 4.4));
    CHECK(monotonicity_report(p, g).ok());
}

TEST_CASE("Hermite interpolation between nodes") {
    auto in = unit_inlet();
    auto g = gas_with(1.0);
    auto p = background_profile(in, g, 0.3, 121);
    Background bg(in, g);
    for (double x : {0.0123, 0.15, 0.2871}) {
        auto a = p.interpolate(x, 1.4, 1.0, g.mass);
        auto b = bg.at(x);
        CHECK(a.p == Approx(b.p).epsilon(1e-8));
        CHECK(a.u == Approx(b.u).epsilon(1e-8));
    }
}
