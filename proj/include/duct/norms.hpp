#pragma once

#include "duct/grid.hpp"

namespace duct {

enum class SeminormRange { up_to_k, exactly_k };

struct DiscreteNorm {
    int k = 0;
    double alpha = 1.0;
    bool anisotropic = false;
    long pair_budget = 100000;
    double sup_part = 0.0;
    double seminorm_part = 0.0;
    double value = 0.0;
};

// Sum of derivative sups plus Hoelder quotients over a fixed pair sample.
// The anisotropic variant drops the pure k-th x-derivative.
DiscreteNorm holder_norm_discrete(const Field& f, const Grid& grid, int k, double alpha, bool anisotropic,
                                  long pair_budget = 100000, SeminormRange range = SeminormRange::up_to_k);

}  // namespace duct
