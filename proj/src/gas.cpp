#include "duct/gas.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <boost/math/interpolators/cardinal_cubic_b_spline.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace duct {

namespace {

using Spline = boost::math::interpolators::cardinal_cubic_b_spline<double>;

double horner(const std::vector<double>& c, double x) {
    double s = 0.0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) s = s * x + *it;
    return s;
}

double horner_d1(const std::vector<double>& c, double x) {
    double s = 0.0;
    for (std::size_t k = c.size(); k-- > 1;) s = s * x + double(k) * c[k];
    return s;
}

double horner_d2(const std::vector<double>& c, double x) {
    double s = 0.0;
    for (std::size_t k = c.size(); k-- > 2;) s = s * x + double(k * (k - 1)) * c[k];
    return s;
}

double horner_int(const std::vector<double>& c, double x) {
    double s = 0.0;
    for (std::size_t k = c.size(); k-- > 0;) s = s * x + c[k] / double(k + 1);
    return s * x;
}

}  // namespace

MassProfile MassProfile::constant(double value) { return polynomial({value}); }

MassProfile MassProfile::polynomial(std::vector<double> coeffs) {
    if (coeffs.empty()) throw domain_error("mass profile: empty polynomial");
    MassProfile mp;
    mp.kind_ = Kind::poly;
    mp.coeffs_ = std::move(coeffs);
    return mp;
}

MassProfile MassProfile::sampled(std::vector<double> values, double x_max) {
    if (values.size() < 4 || !(x_max > 0.0)) throw domain_error("mass profile: need >= 4 samples on a positive interval");
    MassProfile mp;
    mp.kind_ = Kind::table;
    mp.samples_ = std::move(values);
    mp.x_max_ = x_max;
    double h = x_max / double(mp.samples_.size() - 1);
    mp.spline_ = std::make_shared<Spline>(mp.samples_.begin(), mp.samples_.end(), 0.0, h);
    return mp;
}

double MassProfile::value(double x) const {
    if (kind_ == Kind::poly) return horner(coeffs_, x);
    return (*static_cast<const Spline*>(spline_.get()))(x);
}

double MassProfile::d1(double x) const {
    if (kind_ == Kind::poly) return horner_d1(coeffs_, x);
    return static_cast<const Spline*>(spline_.get())->prime(x);
}

double MassProfile::d2(double x) const {
    if (kind_ == Kind::poly) return horner_d2(coeffs_, x);
    return static_cast<const Spline*>(spline_.get())->double_prime(x);
}

double MassProfile::integral(double x) const {
    if (kind_ == Kind::poly) return horner_int(coeffs_, x);
    if (x == 0.0) return 0.0;
    auto f = [this](double t) { return value(t); };
    return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, 0.0, x, 20, 1e-14);
}

double MassProfile::min_on(double l) const {
    double lo = value(0.0);
    const int n = 512;
    for (int i = 1; i <= n; ++i) lo = std::min(lo, value(l * i / n));
    return lo;
}

double MassField::value(double x, double y) const {
    double s = 0.0;
    for (std::size_t i = 0; i < modes.size(); ++i) s += std::cos(modes[i] * y) * horner(polys[i], x);
    return s;
}

double MassField::dx(double x, double y) const {
    double s = 0.0;
    for (std::size_t i = 0; i < modes.size(); ++i) s += std::cos(modes[i] * y) * horner_d1(polys[i], x);
    return s;
}

double MassField::dy(double x, double y) const {
    double s = 0.0;
    for (std::size_t i = 0; i < modes.size(); ++i) s -= modes[i] * std::sin(modes[i] * y) * horner(polys[i], x);
    return s;
}

void MassField::check_symmetry() const {
    // dy of a cosine series vanishes at the walls; dyy must vanish for every x,
    // so the k^2-weighted polynomial sums at y=0 and y=pi must be zero.
    std::size_t deg = 0;
    for (auto& q : polys) deg = std::max(deg, q.size());
    for (std::size_t d = 0; d < deg; ++d) {
        double s0 = 0.0, s1 = 0.0, scale = 0.0;
        for (std::size_t i = 0; i < modes.size(); ++i) {
            double c = d < polys[i].size() ? polys[i][d] : 0.0;
            double k2 = double(modes[i]) * modes[i];
            s0 += k2 * c;
            s1 += k2 * c * ((modes[i] % 2) ? -1.0 : 1.0);
            scale += std::abs(k2 * c);
        }
        if (std::abs(s0) > 1e-12 * (1.0 + scale) || std::abs(s1) > 1e-12 * (1.0 + scale))
            throw domain_error("mass field: second y-derivative does not vanish at the walls");
    }
}

void GasParams::validate(double l) const {
    if (!(gamma > 1.0)) throw domain_error("gamma must exceed 1");
    if (!(mass.min_on(l) > 0.0)) throw domain_error("mass profile must stay positive on [0, l]");
    if (!mass_field.empty()) mass_field.check_symmetry();
}

double sound_speed_sq(double p, double rho, double gamma) {
    if (!(p > 0.0) || !(rho > 0.0)) throw domain_error("sound speed: nonpositive pressure or density");
    return gamma * p / rho;
}

double density_from_pA(double p, double A, double gamma) {
    if (!(p > 0.0) || !(A > 0.0)) throw domain_error("density: nonpositive pressure or entropy function");
    return std::pow(p / A, 1.0 / gamma);
}

double axial_velocity(double E, double v, double p, double A, double gamma) {
    if (!(p > 0.0) || !(A > 0.0)) throw domain_error("axial velocity: nonpositive pressure or entropy function");
    double r = 2.0 * E - v * v - 2.0 * gamma / (gamma - 1.0) * std::pow(p, 1.0 - 1.0 / gamma) * std::pow(A, 1.0 / gamma);
    if (!(r > 0.0)) throw numerical_error("axial velocity: stagnation or vacuum (radicand " + std::to_string(r) + ")");
    return std::sqrt(r);
}

ThermoState make_state(double p, double A, double E, double v, double gamma) {
    ThermoState s{};
    s.p = p;
    s.A = A;
    s.E = E;
    s.v = v;
    s.rho = density_from_pA(p, A, gamma);
    if (s.rho < kVacuumGuard) throw numerical_error("near-vacuum state");
    s.c2 = gamma * p / s.rho;
    s.u = axial_velocity(E, v, p, A, gamma);
    double M2 = (s.u * s.u + v * v) / s.c2;
    if (1.0 - M2 < kSonicGuard) throw numerical_error("near-sonic state (M^2 = " + std::to_string(M2) + ")");
    s.M = std::sqrt(M2);
    return s;
}

}  // namespace duct
