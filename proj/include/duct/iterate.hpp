#pragma once

#include <vector>

#include "duct/background.hpp"
#include "duct/elliptic.hpp"
#include "duct/flow.hpp"
#include "duct/linearization.hpp"
#include "duct/residuals.hpp"
#include "duct/transport.hpp"

namespace duct {

struct SolverParams {
    int n_modes = 32;
    double tol = 1e-10;
    int max_iter = 30;
    double h0_gate = 0.1;
    double elliptic_tol = 1e-13;
    int elliptic_max_iter = 60;
};

// Everything fixed for one duct: background, coefficient tables, grid and boundary data.
class Problem {
public:
    Problem(const InletSpec& inlet, const GasParams& gas, double l, int n_x, int n_y, BoundaryData bd);

    const GasParams& gas() const { return gas_; }
    const Background& background() const { return bg_; }
    const BackgroundProfile& profile() const { return prof_; }
    const CoeffTables& coeffs() const { return ct_; }
    const Grid& grid() const { return grid_; }
    const BoundaryData& boundary() const { return bd_; }
    FlowField background_field() const;

private:
    GasParams gas_;
    Background bg_;
    BackgroundProfile prof_;
    CoeffTables ct_;
    Grid grid_;
    BoundaryData bd_;
};

// Sources of the linear problems, each the full nonlinear expression minus its linear part.
struct SourceBundle {
    Field F0;               // inlet data carried along characteristics into the pressure equation
    Field F_p;              // F5 + lambda F6
    Eigen::VectorXd G_p;    // inlet Robin data
    Eigen::VectorXd g_l;    // outlet Dirichlet data
    Field F_E, F_A;         // transport sources (not divided by lambda)
    Field F_v;              // tangential source before mean removal
    Field h() const { return F0 + F_p; }
};

SourceBundle assemble_sources(const FlowField& U, const Problem& pb);

struct StepInfo {
    int elliptic_iterations = 0;
    double l2_norm = 0.0;
    double compat_defect = 0.0;
};

FlowField apply_T(const FlowField& U, const Problem& pb, const SolverParams& sp, StepInfo* info = nullptr);

// Sup of values plus sup of forward differences over p, A, E, v.
double iteration_norm(const FlowField& a, const FlowField& b);

struct ResidualReport {
    EulerResiduals euler{};
    DecompositionResiduals decomposition{};
    SymmetryReport symmetry{};
    std::vector<double> changes;
    std::vector<double> contraction_ratio;
    int iterations = 0;
    double epsilon_in = 0.0;
    double field_delta_norm = 0.0;
    double k_norm = 0.0;
};

double boundary_amplitude(const BoundaryData& bd);

struct FixedPointResult {
    FlowField U;
    ResidualReport report;
};

FixedPointResult run_fixed_point(const Problem& pb, const SolverParams& sp);

ResidualReport residual_report(const FlowField& U, const Problem& pb);

// d_x v from the normal momentum and mass equations.
Field recover_dx_v(const FlowField& U, const GasParams& gas);

struct DxVCheck {
    double defect, truncation;
    bool ok() const { return defect <= 5.0 * truncation; }
};

DxVCheck check_dx_v(const FlowField& U, const GasParams& gas);

}  // namespace duct
