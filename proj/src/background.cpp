#include "duct/background.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include <boost/math/tools/roots.hpp>
#include <boost/numeric/odeint.hpp>

namespace duct {

namespace {

double F_of_M2(double M2, double g) {
    double w = (g - 1.0) * M2 + 2.0;
    return (g + 1.0) / ((g - 1.0) * w) + 0.5 * std::log(M2 / w);
}

double hermite(double t, double h, double f0, double f1, double d0, double d1) {
    double t2 = t * t, t3 = t2 * t;
    return (2 * t3 - 3 * t2 + 1) * f0 + (t3 - 2 * t2 + t) * h * d0 + (-2 * t3 + 3 * t2) * f1 + (t3 - t2) * h * d1;
}

double solve_increasing(const std::function<double(double)>& f, double lo, double hi) {
    boost::math::tools::eps_tolerance<double> tol(52);
    std::uintmax_t it = 300;
    auto r = boost::math::tools::toms748_solve(f, lo, hi, tol, it);
    return 0.5 * (r.first + r.second);
}

}  // namespace

InletState resolve_inlet(const InletSpec& spec, double g) {
    InletState s{};
    s.p0 = spec.p0;
    s.E0 = spec.E0;
    if (!(spec.p0 > 0.0) || !(spec.E0 > 0.0)) throw domain_error("inlet: p0 and E0 must be positive");
    if (spec.M0) {
        double M0 = *spec.M0;
        if (!(M0 > 0.0 && M0 < 1.0)) throw domain_error("inlet: M0 must lie in (0,1)");
        s.M0 = M0;
        s.c20 = spec.E0 / (0.5 * M0 * M0 + 1.0 / (g - 1.0));
        s.rho0 = g * spec.p0 / s.c20;
        s.u0 = M0 * std::sqrt(s.c20);
        s.A0 = spec.p0 / std::pow(s.rho0, g);
    } else {
        if (!spec.A0 || !(*spec.A0 > 0.0)) throw domain_error("inlet: need M0 or a positive A0");
        s.A0 = *spec.A0;
        s.rho0 = density_from_pA(spec.p0, s.A0, g);
        s.c20 = g * spec.p0 / s.rho0;
        s.u0 = axial_velocity(spec.E0, 0.0, spec.p0, s.A0, g);
        s.M0 = s.u0 / std::sqrt(s.c20);
        if (!(s.M0 < 1.0)) throw domain_error("inlet: supersonic inlet state");
    }
    if (1.0 - s.M0 * s.M0 < kSonicGuard) throw domain_error("inlet: near-sonic inlet state");
    return s;
}

void fill_derivatives(BgPoint& b, double g, double lam) {
    double M2 = b.M2, om = 1.0 - M2;
    b.du = lam * (g + 1.0) * b.m * M2 / (2.0 * om);
    b.drho = 0.5 * lam * b.rho * b.m / b.u * (2.0 - (g + 3.0) * M2) / om;
    double f = (2.0 + (g - 1.0) * M2) / om;
    b.dp = -0.5 * lam * b.rho * b.m * b.u * f;
    b.dM2 = 0.5 * lam * b.m / b.u * M2 * (g * M2 + 1.0) * ((g - 1.0) * M2 + 2.0) / om;
    b.dE = -lam * b.m * b.E / b.u;
    b.dA = -lam * g * b.m * (1.0 - 0.5 * (g - 1.0) * M2) * b.A / b.u;
    double fp = (g + 1.0) / (om * om);
    b.d2p = -0.5 * lam *
            (b.drho * b.m * b.u * f + b.rho * b.dm * b.u * f + b.rho * b.m * b.du * f + b.rho * b.m * b.u * fp * b.dM2);
}

double flow_function_F(double M, double g) {
    if (!(M > 0.0)) throw domain_error("flow function: M must be positive");
    return F_of_M2(M * M, g);
}

double invert_F(double target, double g, double M_min) {
    double F1 = F_of_M2(1.0, g);
    if (target > F1 + 1e-14 * std::abs(F1)) throw numerical_error("flow function target exceeds the sonic value");
    if (target >= F1) return 1.0;
    double Flo = F_of_M2(M_min * M_min, g);
    if (target < Flo) throw numerical_error("flow function target below the Mach floor (near vacuum)");
    auto f = [&](double M) { return F_of_M2(M * M, g) - target; };
    return solve_increasing(f, M_min, 1.0);
}

double critical_length(const InletSpec& inlet, const GasParams& gas, double M_floor) {
    if (gas.lambda == 0.0) return kInfiniteLength;
    double g = gas.gamma;
    InletState in = resolve_inlet(inlet, g);
    double a = in.M0 * in.M0;
    double m0 = ((g - 1.0) * a + 2.0) / (g * a + 1.0);
    double Fend = gas.lambda > 0.0 ? F_of_M2(1.0, g) : F_of_M2(M_floor * M_floor, g);
    if (gas.lambda < 0.0 && !(in.M0 > M_floor)) throw domain_error("inlet Mach number below the configured floor");
    double J = (Fend - F_of_M2(a, g)) * m0 * in.u0 / gas.lambda;
    auto f = [&](double x) { return gas.mass.integral(x) - J; };
    double hi = 1.0;
    for (int k = 0; k < 80 && f(hi) < 0.0; ++k) hi *= 2.0;
    if (f(hi) < 0.0) throw numerical_error("critical length: mass integral does not reach the sonic budget");
    return solve_increasing(f, 0.0, hi);
}

Background::Background(const InletSpec& inlet, const GasParams& gas) : gas_(gas) {
    in_ = resolve_inlet(inlet, gas.gamma);
    double g = gas.gamma, a = in_.M0 * in_.M0;
    F0_ = F_of_M2(a, g);
    m0_ = ((g - 1.0) * a + 2.0) / (g * a + 1.0);
}

BgPoint Background::at(double x) const {
    const double g = gas_.gamma, lam = gas_.lambda;
    BgPoint b{};
    b.x = x;
    b.m = gas_.mass.value(x);
    b.dm = gas_.mass.d1(x);
    b.d2m = gas_.mass.d2(x);
    double M = lam == 0.0 ? in_.M0 : invert_F(F0_ + lam * gas_.mass.integral(x) / (m0_ * in_.u0), g);
    double M2 = M * M, a = in_.M0 * in_.M0;
    double ra = (g * a + 1.0) / (g * M2 + 1.0);
    double rw = ((g - 1.0) * a + 2.0) / ((g - 1.0) * M2 + 2.0);
    b.M2 = M2;
    b.u = in_.u0 * rw / ra;
    b.p = in_.p0 * ra;
    b.rho = in_.rho0 * (M2 / a) / (rw * rw) * ra * ra * ra;
    b.E = in_.E0 * (a / M2) / (ra * ra) * rw;
    b.A = in_.A0 * std::pow(a / M2, g) * std::pow(ra, 1.0 - 3.0 * g) * std::pow(rw, 2.0 * g);
    b.c2 = g * b.p / b.rho;
    if (x == 0.0) {
        b.u = in_.u0;
        b.p = in_.p0;
        b.rho = in_.rho0;
        b.E = in_.E0;
        b.A = in_.A0;
        b.c2 = in_.c20;
    }
    fill_derivatives(b, g, lam);
    return b;
}

BgPoint BackgroundProfile::interpolate(double xq, double g, double lam, const MassProfile& mass) const {
    std::size_t n = x.size();
    std::size_t i = std::upper_bound(x.begin(), x.end(), xq) - x.begin();
    i = std::clamp<std::size_t>(i, 1, n - 1) - 1;
    const BgPoint& a = nodes[i];
    const BgPoint& c = nodes[i + 1];
    double h = x[i + 1] - x[i], t = (xq - x[i]) / h;
    BgPoint b{};
    b.x = xq;
    b.M2 = hermite(t, h, a.M2, c.M2, a.dM2, c.dM2);
    b.u = hermite(t, h, a.u, c.u, a.du, c.du);
    b.rho = hermite(t, h, a.rho, c.rho, a.drho, c.drho);
    b.p = hermite(t, h, a.p, c.p, a.dp, c.dp);
    b.E = hermite(t, h, a.E, c.E, a.dE, c.dE);
    b.A = hermite(t, h, a.A, c.A, a.dA, c.dA);
    b.c2 = g * b.p / b.rho;
    b.m = mass.value(xq);
    b.dm = mass.d1(xq);
    b.d2m = mass.d2(xq);
    fill_derivatives(b, g, lam);
    return b;
}

BackgroundProfile background_profile(const InletSpec& inlet, const GasParams& gas, double l, int n_x,
                                     double M_floor) {
    if (n_x < 2) throw domain_error("background: need at least two nodes");
    if (!(l > 0.0)) throw domain_error("background: duct length must be positive");
    gas.validate(l);
    BackgroundProfile prof;
    prof.l = l;
    prof.l_star = critical_length(inlet, gas, M_floor);
    if (!(l < prof.l_star)) throw domain_error("duct length exceeds the critical length");
    Background bg(inlet, gas);
    for (int i = 0; i < n_x; ++i) {
        double x = l * double(i) / double(n_x - 1);
        prof.x.push_back(x);
        prof.nodes.push_back(bg.at(x));
    }
    return prof;
}

BackgroundProfile background_ode_oracle(const InletSpec& inlet, const GasParams& gas, double l, int n_x) {
    namespace ode = boost::numeric::odeint;
    using State = std::array<double, 6>;  // u, rho, p, M2, E, A
    const double g = gas.gamma, lam = gas.lambda;
    InletState in = resolve_inlet(inlet, g);
    auto point = [&](const State& s, double x) {
        BgPoint b{};
        b.x = x;
        b.u = s[0];
        b.rho = s[1];
        b.p = s[2];
        b.M2 = s[3];
        b.E = s[4];
        b.A = s[5];
        b.c2 = g * b.p / b.rho;
        b.m = gas.mass.value(x);
        b.dm = gas.mass.d1(x);
        b.d2m = gas.mass.d2(x);
        if (1.0 - b.M2 < kSonicGuard) throw numerical_error("background ODE: sonic singularity reached");
        fill_derivatives(b, g, lam);
        return b;
    };
    auto rhs = [&](const State& s, State& ds, double x) {
        BgPoint b = point(s, x);
        ds = {b.du, b.drho, b.dp, b.dM2, b.dE, b.dA};
    };
    State s{in.u0, in.rho0, in.p0, in.M0 * in.M0, in.E0, in.A0};
    BackgroundProfile prof;
    prof.l = l;
    std::vector<double> xs;
    for (int i = 0; i < n_x; ++i) xs.push_back(l * double(i) / double(n_x - 1));
    auto stepper = ode::make_dense_output(1e-14, 1e-14, ode::runge_kutta_dopri5<State>());
    ode::integrate_times(stepper, rhs, s, xs.begin(), xs.end(), l / (4.0 * n_x),
                         [&](const State& st, double x) {
                             prof.x.push_back(x);
                             prof.nodes.push_back(point(st, x));
                         });
    return prof;
}

bool MonotonicityReport::ok() const {
    for (auto& r : rows)
        if (r.mismatches != 0) return false;
    return true;
}

MonotonicityReport monotonicity_report(const BackgroundProfile& prof, const GasParams& gas) {
    const double g = gas.gamma;
    const int s = gas.lambda > 0.0 ? 1 : (gas.lambda < 0.0 ? -1 : 0);
    const double inf = kInfiniteLength;
    double t_rho = std::sqrt(2.0 / (g + 3.0));
    double t_A = g > 3.0 ? std::sqrt(2.0 / (g - 1.0)) : inf;
    MonotonicityReport rep;
    rep.rows = {{"u", s, s, inf, 0},     {"rho", s, -s, t_rho, 0}, {"p", -s, -s, inf, 0},
                {"M", s, s, inf, 0},     {"E", -s, -s, inf, 0},    {"A_s", -s, s, t_A, 0}};
    auto val = [](const BgPoint& b, const std::string& q) {
        if (q == "u") return b.u;
        if (q == "rho") return b.rho;
        if (q == "p") return b.p;
        if (q == "M") return std::sqrt(b.M2);
        if (q == "E") return b.E;
        return b.A;
    };
    auto sgn = [](double d) { return d > 0.0 ? 1 : (d < 0.0 ? -1 : 0); };
    for (auto& r : rep.rows) {
        for (std::size_t i = 0; i + 1 < prof.nodes.size(); ++i) {
            double Ma = std::sqrt(prof.nodes[i].M2), Mb = std::sqrt(prof.nodes[i + 1].M2);
            bool below = std::max(Ma, Mb) < r.threshold, above = std::min(Ma, Mb) > r.threshold;
            if (!below && !above) continue;
            int expect = below ? r.expected_below : r.expected_above;
            if (sgn(val(prof.nodes[i + 1], r.quantity) - val(prof.nodes[i], r.quantity)) != expect) ++r.mismatches;
        }
    }
    return rep;
}

}  // namespace duct
