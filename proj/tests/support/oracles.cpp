#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ftda/rng.hpp"

namespace ftda::oracle {

namespace {

double dist(const Vec& a, const Vec& b) {
    double s = 0;
    for (index_t i = 0; i < a.size(); ++i) s += sqr(a[i] - b[i]);
    return std::sqrt(s);
}

// circumscribed ball of affinely independent support points (k <= d+1):
// solve (p_i - p_0) . (c - p_0) = |p_i - p_0|^2 / 2 by Gaussian elimination
// in the affine span.
Ball circumball(const std::vector<Vec>& support) {
    const index_t k = support.size();
    if (k == 0) return {Vec{}, -1.0};
    if (k == 1) return {support[0], 0.0};
    const index_t d = support[0].size();
    const index_t m = k - 1;
    std::vector<Vec> basis(m, Vec(d));
    for (index_t i = 0; i < m; ++i)
        for (index_t j = 0; j < d; ++j) basis[i][j] = support[i + 1][j] - support[0][j];

    // Gram system G s = rhs, c = p0 + sum s_i basis_i
    std::vector<Vec> G(m, Vec(m));
    Vec rhs(m);
    for (index_t i = 0; i < m; ++i) {
        for (index_t j = 0; j < m; ++j) {
            double g = 0;
            for (index_t t = 0; t < d; ++t) g += basis[i][t] * basis[j][t];
            G[i][j] = g;
        }
        rhs[i] = 0.5 * G[i][i];
    }
    // partial-pivot elimination
    for (index_t col = 0; col < m; ++col) {
        index_t piv = col;
        for (index_t r = col + 1; r < m; ++r)
            if (std::abs(G[r][col]) > std::abs(G[piv][col])) piv = r;
        if (std::abs(G[piv][col]) < 1e-14) return {Vec{}, -1.0};  // degenerate support
        std::swap(G[piv], G[col]);
        std::swap(rhs[piv], rhs[col]);
        for (index_t r = 0; r < m; ++r) {
            if (r == col) continue;
            const double f = G[r][col] / G[col][col];
            for (index_t c2 = col; c2 < m; ++c2) G[r][c2] -= f * G[col][c2];
            rhs[r] -= f * rhs[col];
        }
    }
    Vec center = support[0];
    for (index_t i = 0; i < m; ++i) {
        const double s = rhs[i] / G[i][i];
        for (index_t t = 0; t < d; ++t) center[t] += s * basis[i][t];
    }
    return {center, dist(center, support[0])};
}

Ball welzl_rec(std::vector<Vec>& pts, index_t n, std::vector<Vec>& support, index_t d) {
    if (n == 0 || support.size() == d + 1) return circumball(support);
    Ball ball = circumball(support);
    for (index_t i = 0; i < n; ++i) {
        if (ball.radius >= 0 && dist(pts[i], ball.center) <= ball.radius * (1 + 1e-12) + 1e-14)
            continue;
        // move-to-front
        Vec p = pts[i];
        for (index_t j = i; j > 0; --j) pts[j] = pts[j - 1];
        pts[0] = p;
        support.push_back(p);
        ball = welzl_rec(pts, i, support, d);
        support.pop_back();
    }
    return ball;
}

}  // namespace

Ball welzl_ball(std::vector<Vec> points, std::uint64_t seed) {
    if (points.empty()) return {Vec{}, -1.0};
    const index_t d = points[0].size();
    Rng rng(seed);
    for (index_t i = points.size(); i > 1; --i)
        std::swap(points[i - 1], points[static_cast<index_t>(rng.uniform() * i)]);
    std::vector<Vec> support;
    return welzl_rec(points, points.size(), support, d);
}

GridResult grid_minimax_2d(const std::function<double(index_t, const Vec&)>& objective,
                           index_t terms, Vec lo, Vec hi, double final_cell,
                           int resolution) {
    GridResult best{Vec{0, 0}, std::numeric_limits<double>::infinity()};
    double cell = std::max(hi[0] - lo[0], hi[1] - lo[1]) / (resolution - 1);
    for (int level = 0; level < 40; ++level) {
        best.value = std::numeric_limits<double>::infinity();
        const double dx = (hi[0] - lo[0]) / (resolution - 1);
        const double dy = (hi[1] - lo[1]) / (resolution - 1);
        Vec w(2);
        for (int ix = 0; ix < resolution; ++ix) {
            w[0] = lo[0] + ix * dx;
            for (int iy = 0; iy < resolution; ++iy) {
                w[1] = lo[1] + iy * dy;
                double m = -std::numeric_limits<double>::infinity();
                for (index_t t = 0; t < terms; ++t) m = std::max(m, objective(t, w));
                if (m < best.value) {
                    best.value = m;
                    best.witness = w;
                }
            }
        }
        cell = std::max(dx, dy);
        if (cell <= final_cell && level >= 2) break;
        // refine around the best node
        lo = {best.witness[0] - 4 * dx, best.witness[1] - 4 * dy};
        hi = {best.witness[0] + 4 * dx, best.witness[1] + 4 * dy};
    }
    return best;
}

GridResult grid_enclosing_2d(const MetricSpec& metric, const std::vector<Vec>& points,
                             Orientation orientation, double pad) {
    Vec lo = points[0], hi = points[0];
    for (const Vec& p : points)
        for (index_t i = 0; i < 2; ++i) {
            lo[i] = std::min(lo[i], p[i]);
            hi[i] = std::max(hi[i], p[i]);
        }
    const double span = std::max(hi[0] - lo[0], hi[1] - lo[1]);
    for (index_t i = 0; i < 2; ++i) {
        lo[i] -= pad * span + 0.5;
        hi[i] += pad * span + 0.5;
    }
    const double sign = orientation == Orientation::Forward ? 1.0 : -1.0;
    auto objective = [&](index_t t, const Vec& w) {
        Vec v(2);
        for (index_t i = 0; i < 2; ++i) v[i] = sign * (w[i] - points[t][i]);
        return metric.value(points[t], v);
    };
    return grid_minimax_2d(objective, points.size(), lo, hi);
}

namespace {

double match_rec(const std::vector<DiagramPoint>& a, const std::vector<DiagramPoint>& b,
                 index_t i, std::vector<char>& used) {
    if (i == a.size()) {
        double worst = 0.0;  // leftover b bars go to the diagonal
        for (index_t j = 0; j < b.size(); ++j)
            if (!used[j]) worst = std::max(worst, 0.5 * (b[j].death - b[j].birth));
        return worst;
    }
    // diagonal option for a_i
    double best = std::max(0.5 * (a[i].death - a[i].birth), match_rec(a, b, i + 1, used));
    for (index_t j = 0; j < b.size(); ++j) {
        if (used[j]) continue;
        const double cost =
            std::max(std::abs(a[i].birth - b[j].birth), std::abs(a[i].death - b[j].death));
        used[j] = 1;
        best = std::min(best, std::max(cost, match_rec(a, b, i + 1, used)));
        used[j] = 0;
    }
    return best;
}

}  // namespace

double exhaustive_bottleneck(const std::vector<DiagramPoint>& a,
                             const std::vector<DiagramPoint>& b) {
    std::vector<char> used(b.size(), 0);
    // recompute the diagonal-only branch properly: min over all assignments
    std::vector<DiagramPoint> fa, fb;
    for (const auto& p : a)
        if (!p.essential()) fa.push_back(p);
    for (const auto& p : b)
        if (!p.essential()) fb.push_back(p);
    used.assign(fb.size(), 0);
    return match_rec(fa, fb, 0, used);
}

}  // namespace ftda::oracle
