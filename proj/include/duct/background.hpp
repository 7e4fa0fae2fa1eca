#pragma once

#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "duct/gas.hpp"

namespace duct {

// Either (M0, p0, E0) or (E0, A0, p0).
struct InletSpec {
    std::optional<double> M0;
    double p0 = 1.0;
    double E0 = 0.0;
    std::optional<double> A0;
};

struct InletState {
    double M0, u0, rho0, p0, E0, A0, c20;
};

InletState resolve_inlet(const InletSpec& spec, double gamma);

// Background state at one x with exact derivatives from the ODE right-hand sides.
struct BgPoint {
    double x;
    double M2, u, rho, p, E, A, c2;
    double m, dm, d2m;
    double du, drho, dp, dE, dA, dM2;
    double d2p;
};

// Fill derivatives of a point whose primitive state and mass values are set.
void fill_derivatives(BgPoint& b, double gamma, double lambda);

double flow_function_F(double M, double gamma);
double invert_F(double target, double gamma, double M_min = 1e-4);

constexpr double kInfiniteLength = std::numeric_limits<double>::infinity();

double critical_length(const InletSpec& inlet, const GasParams& gas, double M_floor = 0.01);

// Exact pointwise background through the flow function.
class Background {
public:
    Background(const InletSpec& inlet, const GasParams& gas);
    BgPoint at(double x) const;
    const InletState& inlet() const { return in_; }
    const GasParams& gas() const { return gas_; }

private:
    InletState in_;
    GasParams gas_;
    double F0_, m0_;
};

struct BackgroundProfile {
    double l = 0.0;
    double l_star = kInfiniteLength;
    std::vector<double> x;
    std::vector<BgPoint> nodes;

    // Cubic Hermite interpolation through nodal values and exact derivatives.
    BgPoint interpolate(double x, double gamma, double lambda, const MassProfile& mass) const;
};

BackgroundProfile background_profile(const InletSpec& inlet, const GasParams& gas, double l, int n_x,
                                     double M_floor = 0.01);
BackgroundProfile background_ode_oracle(const InletSpec& inlet, const GasParams& gas, double l, int n_x);

struct MonotonicityRow {
    std::string quantity;
    int expected_below;  // sign for M below the threshold
    int expected_above;  // sign for M above the threshold
    double threshold;
    int mismatches;
};

struct MonotonicityReport {
    std::vector<MonotonicityRow> rows;
    bool ok() const;
};

MonotonicityReport monotonicity_report(const BackgroundProfile& profile, const GasParams& gas);

}  // namespace duct
