#include "duct/norms.hpp"

#include <cmath>
#include <random>
#include <vector>

#include "duct/error.hpp"

namespace duct {

namespace {

struct Pair {
    int i1, j1, i2, j2;
    double inv_dist;  // 1 / |P1 - P2|^alpha
};

std::vector<Pair> sample_pairs(const Grid& g, double alpha, long budget) {
    std::vector<Pair> pairs;
    auto add = [&](int i1, int j1, int i2, int j2) {
        double dx = g.x(i2) - g.x(i1), dy = g.y(j2) - g.y(j1);
        double d = std::hypot(dx, dy);
        if (d > 0) pairs.push_back({i1, j1, i2, j2, 1.0 / std::pow(d, alpha)});
    };
    for (int i = 0; i < g.nx; ++i)
        for (int j = 0; j < g.ny; ++j) {
            if (i + 1 < g.nx) add(i, j, i + 1, j);
            if (j + 1 < g.ny) add(i, j, i, j + 1);
        }
    for (int i = 0; i < g.nx; ++i) add(i, 0, i, g.ny - 1);
    for (int j = 0; j < g.ny; ++j) add(0, j, g.nx - 1, j);
    add(0, 0, g.nx - 1, g.ny - 1);
    add(0, g.ny - 1, g.nx - 1, 0);
    // Stratified far pairs: first point walks the grid, second is drawn at random.
    std::mt19937_64 rng(0x5eed);
    std::uniform_int_distribution<int> di(0, g.nx - 1), dj(0, g.ny - 1);
    const long n = long(g.nx) * g.ny;
    long extra = std::max(0L, budget - long(pairs.size()));
    for (long s = 0; s < extra; ++s) {
        long p = (s * 7919) % n;
        add(int(p / g.ny), int(p % g.ny), di(rng), dj(rng));
    }
    return pairs;
}

}  // namespace

DiscreteNorm holder_norm_discrete(const Field& f, const Grid& grid, int k, double alpha, bool anisotropic,
                                  long pair_budget, SeminormRange range) {
    if (k < 0 || k > 3) throw domain_error("norm order must be between 0 and 3");
    if (grid.nx < k + 5 || grid.ny < k + 5) throw domain_error("grid too coarse for the requested norm order");
    if (!(alpha > 0.0 && alpha <= 1.0)) throw domain_error("Hoelder exponent must lie in (0, 1]");
    DiscreteNorm out;
    out.k = k;
    out.alpha = alpha;
    out.anisotropic = anisotropic;
    out.pair_budget = pair_budget;
    const double dx = grid.dx(), dy = grid.dy();
    std::vector<Pair> pairs = sample_pairs(grid, alpha, pair_budget);

    // dx_pow[a] = d^a/dx^a f
    std::vector<Field> dxs{f};
    for (int a = 1; a <= k; ++a) dxs.push_back(d_dx(dxs.back(), dx));
    for (int a = 0; a <= k; ++a) {
        Field d = dxs[a];
        for (int b = 0; a + b <= k; ++b) {
            if (b > 0) d = d_dy(d, dy);
            if (anisotropic && k > 0 && a == k) continue;
            out.sup_part += sup(d);
            if (range == SeminormRange::exactly_k && a + b != k) continue;
            double q = 0.0;
            for (const Pair& p : pairs) q = std::max(q, std::abs(d(p.i1, p.j1) - d(p.i2, p.j2)) * p.inv_dist);
            out.seminorm_part += q;
        }
    }
    out.value = out.sup_part + out.seminorm_part;
    return out;
}

}  // namespace duct
