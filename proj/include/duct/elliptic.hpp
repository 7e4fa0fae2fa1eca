#pragma once

#include <vector>

#include "duct/grid.hpp"
#include "duct/modal.hpp"

namespace duct {

// p(y) = c0/2 + sum_{m>=1} c_m cos(m y); trapezoid quadrature on the y-grid.
Eigen::VectorXd cosine_analyze(const Eigen::VectorXd& f, int N, bool check_symmetry = true);
Eigen::VectorXd cosine_synthesize(const Eigen::VectorXd& c, int ny);
// Row-wise spectra: result is (N+1) x nx.
Eigen::MatrixXd analyze_field(const Field& f, int N);
Field synthesize_field(const Eigen::MatrixXd& spec, int ny);

// Bracketed factors of the principal nonlinear operator L2.
struct L2Coeffs {
    Field kxx, kyy_sound, kyy_v, kxy;
    bool empty() const { return kxx.size() == 0; }
    double sup_norm() const;
};

struct EllipticProblem {
    Field h;
    Eigen::VectorXd g0;  // inlet Robin data over y
    Eigen::VectorXd gl;  // outlet Dirichlet data over y
    L2Coeffs l2;
};

struct EllipticSolution {
    Field p;
    Field px;                   // modal x-derivative
    Eigen::MatrixXd spectrum;   // (N+1) x nx
    int iterations = 1;
    double tail_fraction = 0.0; // spectral energy of h beyond N
    std::vector<double> changes;
};

EllipticSolution solve_L1(const EllipticProblem& prob, const CoeffTables& ct, const Grid& grid, int N);
Field apply_L1(const Field& p, const CoeffTables& ct, const Grid& grid);
Field apply_L1_residual(const Field& p, const EllipticProblem& prob, const CoeffTables& ct, const Grid& grid);
Field apply_L2(const Field& p, const L2Coeffs& k, const Grid& grid);
EllipticSolution solve_full_L(const EllipticProblem& prob, const CoeffTables& ct, const Grid& grid, int N,
                              double tol, int max_iter, double h0_gate = 0.1);

}  // namespace duct
