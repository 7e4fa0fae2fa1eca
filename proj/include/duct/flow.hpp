#pragma once

#include <utility>
#include <vector>

#include "duct/background.hpp"
#include "duct/grid.hpp"

namespace duct {

// sum_k a_k cos(k y)
struct CosSeries {
    std::vector<std::pair<int, double>> terms;
    double operator()(double y) const;
    double d1(double y) const;
    CosSeries scaled(double s) const;
};

// sum_k b_k sin(k y); vanishes with its second derivative at both walls.
struct SinSeries {
    std::vector<std::pair<int, double>> terms;
    double operator()(double y) const;
    double d1(double y) const;
    SinSeries scaled(double s) const;
};

// Perturbations of the inlet and outlet data relative to the background.
struct BoundaryData {
    CosSeries E0;  // E(0,y) - E_b(0)
    CosSeries A0;  // A(0,y) - A_b(0)
    SinSeries v0;  // v(0,y)
    CosSeries pl;  // p(l,y) - p_b(l)

    BoundaryData scaled(double s) const { return {E0.scaled(s), A0.scaled(s), v0.scaled(s), pl.scaled(s)}; }
};

struct FlowField {
    Grid grid;
    Field p, A, E, v;
    Field u, rho, c2, M;

    // Recompute u, rho, c2, M through the gas guards.
    void update(double gamma);
};

FlowField broadcast_background(const BackgroundProfile& prof, int n_y, double gamma);

}  // namespace duct
