#pragma once

// Test-only reference implementations, kept independent of the library's
// solver and reduction paths.

#include <cstdint>
#include <functional>
#include <vector>

#include "ftda/metrics.hpp"
#include "ftda/persistence.hpp"
#include "ftda/types.hpp"

namespace ftda::oracle {

// Exact smallest enclosing Euclidean ball (Welzl, move-to-front), 2-D/3-D.
struct Ball {
    Vec center;
    double radius = 0.0;
};
Ball welzl_ball(std::vector<Vec> points, std::uint64_t seed = 1);

// 2-D grid-refinement minimax: minimize max_i objective(i, w) over a box,
// refining around the best node until the cell size reaches `final_cell`.
struct GridResult {
    Vec witness;
    double value = 0.0;
};
GridResult grid_minimax_2d(const std::function<double(index_t, const Vec&)>& objective,
                           index_t terms, Vec lo, Vec hi, double final_cell = 1e-4,
                           int resolution = 81);

// convenience: max_i F(p_i, +-(w - p_i)) for a metric
GridResult grid_enclosing_2d(const MetricSpec& metric, const std::vector<Vec>& points,
                             Orientation orientation, double pad = 1.0);

// Exhaustive bottleneck distance by enumerating all partial matchings
// (points may also go to the diagonal); practical for <= ~6 finite bars.
double exhaustive_bottleneck(const std::vector<DiagramPoint>& a,
                             const std::vector<DiagramPoint>& b);

}  // namespace ftda::oracle
