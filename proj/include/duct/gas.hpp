#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "duct/error.hpp"

namespace duct {

constexpr double kSonicGuard = 1e-6;
constexpr double kVacuumGuard = 1e-10;

// Background mass-addition profile m_b(x).
class MassProfile {
public:
    static MassProfile constant(double value);
    static MassProfile polynomial(std::vector<double> coeffs);
    // Uniform samples on [0, x_max], cubic B-spline in between.
    static MassProfile sampled(std::vector<double> values, double x_max);

    double value(double x) const;
    double d1(double x) const;
    double d2(double x) const;
    // Integral of m_b over [0, x].
    double integral(double x) const;
    // Positivity check on [0, l].
    double min_on(double l) const;

private:
    enum class Kind { poly, table };
    Kind kind_ = Kind::poly;
    std::vector<double> coeffs_{1.0};
    std::shared_ptr<const void> spline_;
    std::vector<double> samples_;
    double x_max_ = 0.0;
};

// Perturbed mass field m(x,y) = m_b(x) + sum_k cos(k y) q_k(x).
struct MassField {
    std::vector<int> modes;
    std::vector<std::vector<double>> polys;

    bool empty() const { return modes.empty(); }
    double value(double x, double y) const;
    double dx(double x, double y) const;
    double dy(double x, double y) const;
    // Throws unless dy m and dyy m vanish at both walls.
    void check_symmetry() const;
};

struct GasParams {
    double gamma = 1.4;
    double lambda = 0.0;
    MassProfile mass = MassProfile::constant(1.0);
    MassField mass_field;

    double m(double x, double y) const { return mass.value(x) + mass_field.value(x, y); }
    double m_dx(double x, double y) const { return mass.d1(x) + mass_field.dx(x, y); }
    double m_dy(double x, double y) const { return mass_field.dy(x, y); }
    void validate(double l) const;
};

struct ThermoState {
    double p, A, rho, c2, E, u, v, M;
};

double sound_speed_sq(double p, double rho, double gamma);
double density_from_pA(double p, double A, double gamma);
double axial_velocity(double E, double v, double p, double A, double gamma);
// Full state from the stored unknowns; applies the sonic and vacuum guards.
ThermoState make_state(double p, double A, double E, double v, double gamma);

}  // namespace duct
