#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "ftda/metrics.hpp"
#include "ftda/types.hpp"

namespace ftda {

// Forward ball: F(center, w - center) <= radius. Backward: F(center, center - w).
struct FinslerBall {
    Vec center;
    double radius = 0.0;
    const MetricSpec* metric = nullptr;
    Orientation orientation = Orientation::Forward;

    bool contains(const Vec& w) const;
};

struct MinimaxResult {
    Vec witness;
    double radius = 0.0;  // max_i F(p_i, witness - p_i), recomputed exactly at return
    int iterations = 0;
    bool converged = true;
    double gap_estimate = 0.0;
};

// Smallest radius eps with a common point in all (forward or backward) balls
// B(p_i, eps); decides generalized Cech membership. Smoothed convex minimax:
// log-sum-exp with an escalating sharpness schedule, each stage minimized by
// backtracking gradient descent.
MinimaxResult enclosing_radius(const MetricSpec& metric, const std::vector<Vec>& points,
                               Orientation orientation, double tol);

struct IntersectionResult {
    bool nonempty = false;
    Vec witness;
    double slack = 0.0;  // min over w of max_i (F_i(w) - r_i), as found
};

// True iff the balls share a common point (within tol); balls must share
// metric and orientation.
IntersectionResult intersection_nonempty(const std::vector<FinslerBall>& balls, double tol);

using Membership = std::function<bool(const Vec&)>;

// Axis-aligned sampling box for a bounded membership set, located by per-axis
// exponential search plus bisection from an interior seed, then inflated.
struct BoxSampler {
    Vec lo, hi;
    Vec draw(class Rng& rng) const;
};
BoxSampler bounding_box_of(const Membership& member, const Vec& interior_seed,
                           double inflate = 1.25,
                           std::optional<double> positive_floor = std::nullopt);

struct ConvexityReport {
    int pairs_tested = 0;
    int violations = 0;
    long long draws = 0;      // rejection-sampler attempts
    long long accepted = 0;   // accepted members
    Vec witness_u, witness_w, witness_mid;  // first violating segment, if any
    bool passed() const { return violations == 0; }
};

// Samples member pairs by rejection and tests 9 interior points per segment.
ConvexityReport convexity_probe(const Membership& member, const BoxSampler& sampler,
                                int pairs, std::uint64_t seed);
ConvexityReport convexity_probe(const FinslerBall& ball, int pairs, std::uint64_t seed);

// det(H_f)/||grad f||^4 by central finite differences at a level-set point;
// the sign is the deliverable. Throws DegenerateGradient if ||grad f|| <= 1e-8.
double levelset_curvature_sign(const std::function<double(const Vec&)>& f, const Vec& x);

// 2-D ball boundary by angle sweep (uses 1-homogeneity, exact per ray).
std::vector<Vec> ball_boundary_2d(const FinslerBall& ball, int samples = 360);

}  // namespace ftda
