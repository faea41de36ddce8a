#include "ftda/geometry.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>

#include "ftda/rng.hpp"

namespace ftda {

bool FinslerBall::contains(const Vec& w) const {
    if (!metric) throw ConfigError("FinslerBall: no metric attached");
    metric->check_dimension(w, "query point");
    Vec v(w.size());
    for (index_t i = 0; i < w.size(); ++i)
        v[i] = (orientation == Orientation::Forward) ? w[i] - center[i] : center[i] - w[i];
    return metric->evaluate(center, v) <= radius;
}

namespace {

// Shared minimax core: minimize max_i (F(c_i, s*(w - c_i)) - offset_i) with
// s = +1 forward, -1 backward.
struct MinimaxProblem {
    const MetricSpec* metric;
    const std::vector<Vec>* centers;
    const std::vector<double>* offsets;  // may be null (all zero)
    double sign;

    double offset(index_t i) const { return offsets ? (*offsets)[i] : 0.0; }

    double term(index_t i, const Vec& w, Vec& scratch) const {
        const Vec& c = (*centers)[i];
        for (index_t d = 0; d < w.size(); ++d) scratch[d] = sign * (w[d] - c[d]);
        return metric->value(c, scratch) - offset(i);
    }

    double exact_max(const Vec& w, Vec& scratch) const {
        double m = -std::numeric_limits<double>::infinity();
        for (index_t i = 0; i < centers->size(); ++i) m = std::max(m, term(i, w, scratch));
        return m;
    }

    // smoothed objective: (1/t) log sum exp(t * term_i), shifted for stability
    double smoothed(double t, const Vec& w, Vec& scratch) const {
        const index_t k = centers->size();
        double m = -std::numeric_limits<double>::infinity();
        thread_local std::vector<double> f;
        f.assign(k, 0.0);
        for (index_t i = 0; i < k; ++i) {
            f[i] = term(i, w, scratch);
            m = std::max(m, f[i]);
        }
        double s = 0;
        for (index_t i = 0; i < k; ++i) s += std::exp(t * (f[i] - m));
        return m + std::log(s) / t;
    }

    // gradient of the smoothed objective
    void smoothed_grad(double t, const Vec& w, Vec& grad, Vec& scratch) const {
        const index_t k = centers->size();
        const index_t n = w.size();
        thread_local std::vector<double> f;
        f.assign(k, 0.0);
        double m = -std::numeric_limits<double>::infinity();
        for (index_t i = 0; i < k; ++i) {
            f[i] = term(i, w, scratch);
            m = std::max(m, f[i]);
        }
        double z = 0;
        for (index_t i = 0; i < k; ++i) z += std::exp(t * (f[i] - m));
        std::fill(grad.begin(), grad.end(), 0.0);
        for (index_t i = 0; i < k; ++i) {
            const double wgt = std::exp(t * (f[i] - m)) / z;
            if (wgt < 1e-14) continue;  // also guards the v = 0 gradient singularity
            const Vec& c = (*centers)[i];
            for (index_t d = 0; d < n; ++d) scratch[d] = sign * (w[d] - c[d]);
            double vnorm2 = 0;
            for (double x : scratch) vnorm2 += x * x;
            if (vnorm2 < 1e-28) continue;
            const Vec g = metric->gradient_v(c, scratch);
            for (index_t d = 0; d < n; ++d) grad[d] += wgt * sign * g[d];
        }
    }
};

struct SolveStats {
    int iterations = 0;
    double last_decrease = 0.0;
};

// One smoothing stage: backtracking gradient descent with a Barzilai-Borwein
// initial step. Stops on stalled objective decrease or the iteration cap.
void minimize_stage(const MinimaxProblem& prob, double t, Vec& w, double f_stop,
                    int iter_cap, SolveStats& stats) {
    const index_t n = w.size();
    Vec grad(n), prev_grad(n), scratch(n), trial(n);
    double f = prob.smoothed(t, w, scratch);
    double step = 0.0;
    Vec prev_w;
    for (int it = 0; it < iter_cap; ++it) {
        prob.smoothed_grad(t, w, grad, scratch);
        double gnorm2 = 0;
        for (double g : grad) gnorm2 += g * g;
        if (gnorm2 < 1e-28) break;

        if (!prev_w.empty()) {  // BB1 step from the last accepted move
            double sy = 0, ss = 0;
            for (index_t d = 0; d < n; ++d) {
                const double sd = w[d] - prev_w[d];
                sy += sd * (grad[d] - prev_grad[d]);
                ss += sd * sd;
            }
            step = (sy > 1e-300) ? ss / sy : step * 2.0;
        }
        if (!(step > 0.0) || !std::isfinite(step)) step = 1.0 / (t * std::max(gnorm2, 1e-12));
        step = std::clamp(step, 1e-18, 1e6);

        prev_w = w;
        prev_grad = grad;
        double fnew = f;
        bool moved = false;
        for (int bt = 0; bt < 60; ++bt) {
            for (index_t d = 0; d < n; ++d) trial[d] = w[d] - step * grad[d];
            fnew = prob.smoothed(t, trial, scratch);
            if (fnew <= f - 1e-4 * step * gnorm2) {
                w = trial;
                moved = true;
                break;
            }
            step *= 0.5;
        }
        ++stats.iterations;
        if (!moved) {
            stats.last_decrease = 0.0;
            break;
        }
        stats.last_decrease = f - fnew;
        f = fnew;
        if (stats.last_decrease <= f_stop) break;
    }
}

MinimaxResult solve_minimax(const MinimaxProblem& prob, double tol, int iter_cap_per_stage) {
    const index_t n = (*prob.centers)[0].size();
    const index_t k = prob.centers->size();

    // barycenter start, projected into the positive orthant when required
    Vec w(n, 0.0);
    for (const Vec& c : *prob.centers)
        for (index_t d = 0; d < n; ++d) w[d] += c[d] / static_cast<double>(k);
    if (prob.metric->domain_constraint == Domain::PositiveOrthant)
        for (auto& x : w) x = std::max(x, 1e-9);

    const double logk = std::log(static_cast<double>(k));
    SolveStats stats;
    double t = 10.0;
    const double t_final_target = std::max(10.0, logk / std::max(0.5 * tol, 1e-12));
    for (;;) {
        minimize_stage(prob, t, w, 0.01 * tol, iter_cap_per_stage, stats);
        if (logk / t <= 0.5 * tol || t >= 1e12) break;
        t = std::min(t * 10.0, t_final_target);
    }

    Vec scratch(n);
    MinimaxResult result;
    result.witness = w;
    result.radius = prob.exact_max(w, scratch);
    // candidate witnesses at the input points themselves; keeps the result a
    // certified upper bound never worse than the best single-center cover
    for (const Vec& c : *prob.centers) {
        const double r = prob.exact_max(c, scratch);
        if (r < result.radius) {
            result.radius = r;
            result.witness = c;
        }
    }
    result.iterations = stats.iterations;
    result.gap_estimate = logk / t + stats.last_decrease;
    result.converged = result.gap_estimate <= tol;
    return result;
}

}  // namespace

MinimaxResult enclosing_radius(const MetricSpec& metric, const std::vector<Vec>& points,
                               Orientation orientation, double tol) {
    if (points.empty()) throw ConfigError("enclosing_radius: empty point set");
    if (!(tol > 0)) throw ConfigError("enclosing_radius: tol must be positive");
    for (const Vec& p : points) metric.check_point(p);
    if (points.size() == 1)
        return MinimaxResult{points[0], 0.0, 0, true, 0.0};

    MinimaxProblem prob{&metric, &points, nullptr,
                        orientation == Orientation::Forward ? 1.0 : -1.0};
    return solve_minimax(prob, tol, 400);
}

IntersectionResult intersection_nonempty(const std::vector<FinslerBall>& balls, double tol) {
    if (balls.empty()) throw ConfigError("intersection_nonempty: no balls");
    const MetricSpec* metric = balls[0].metric;
    const Orientation orientation = balls[0].orientation;
    std::vector<Vec> centers;
    std::vector<double> radii;
    for (const auto& b : balls) {
        if (b.metric != metric || b.orientation != orientation)
            throw ConfigError("intersection_nonempty: balls must share metric and orientation");
        centers.push_back(b.center);
        radii.push_back(b.radius);
    }
    MinimaxProblem prob{metric, &centers, &radii,
                        orientation == Orientation::Forward ? 1.0 : -1.0};
    MinimaxResult res = solve_minimax(prob, tol, 400);
    IntersectionResult out;
    out.slack = res.radius;  // here "radius" is min max (F_i - r_i)
    out.nonempty = res.radius <= tol;
    out.witness = res.witness;
    if (!res.converged && !out.nonempty)
        throw ConvergenceError("intersection_nonempty: solver gap " +
                               std::to_string(res.gap_estimate) + " above tol");
    return out;
}

Vec BoxSampler::draw(Rng& rng) const {
    Vec w(lo.size());
    for (index_t i = 0; i < lo.size(); ++i) w[i] = rng.uniform(lo[i], hi[i]);
    return w;
}

BoxSampler bounding_box_of(const Membership& member, const Vec& interior_seed,
                           double inflate, std::optional<double> positive_floor) {
    if (!member(interior_seed))
        throw SamplingError("bounding_box_of: seed point is not a member");
    const index_t n = interior_seed.size();
    BoxSampler box;
    box.lo = interior_seed;
    box.hi = interior_seed;
    for (index_t axis = 0; axis < n; ++axis) {
        for (int dir : {+1, -1}) {
            double t = 1e-3 * (1.0 + std::abs(interior_seed[axis]));
            double t_inside = 0.0;
            Vec probe = interior_seed;
            int doublings = 0;
            for (; doublings < 70; ++doublings) {
                probe[axis] = interior_seed[axis] + dir * t;
                if (positive_floor && probe[axis] <= *positive_floor) break;
                if (!member(probe)) break;
                t_inside = t;
                t *= 2.0;
            }
            if (doublings >= 70)
                throw SamplingError("bounding_box_of: set appears unbounded along axis " +
                                    std::to_string(axis));
            double lo_t = t_inside, hi_t = t;
            for (int it = 0; it < 60; ++it) {
                const double mid = 0.5 * (lo_t + hi_t);
                probe[axis] = interior_seed[axis] + dir * mid;
                const bool inside =
                    (!positive_floor || probe[axis] > *positive_floor) && member(probe);
                (inside ? lo_t : hi_t) = mid;
            }
            const double extent = interior_seed[axis] + dir * hi_t;
            if (dir > 0)
                box.hi[axis] = extent;
            else
                box.lo[axis] = extent;
        }
    }
    // inflate: metric balls need not have their coordinate extremes on the
    // axis rays through the seed
    for (index_t i = 0; i < n; ++i) {
        const double half = 0.5 * (box.hi[i] - box.lo[i]) * (inflate - 1.0);
        box.lo[i] -= half;
        box.hi[i] += half;
        if (positive_floor) box.lo[i] = std::max(box.lo[i], *positive_floor);
    }
    return box;
}

namespace {

ConvexityReport probe_segments(const Membership& endpoint_member,
                               const Membership& segment_member, const BoxSampler& sampler,
                               int pairs, std::uint64_t seed) {
    if (pairs < 1) throw ConfigError("convexity_probe: pairs must be >= 1");
    Rng rng(seed);
    ConvexityReport report;

    auto draw_member = [&](Vec& out) {
        for (;;) {
            ++report.draws;
            Vec w = sampler.draw(rng);
            if (endpoint_member(w)) {
                ++report.accepted;
                out = w;
                return;
            }
            if (report.draws >= 20000 &&
                static_cast<double>(report.accepted) < 1e-4 * static_cast<double>(report.draws))
                throw SamplingError("convexity_probe: rejection acceptance rate below 1e-4");
        }
    };

    Vec u, w, mid(sampler.lo.size());
    for (int pair = 0; pair < pairs; ++pair) {
        draw_member(u);
        draw_member(w);
        report.pairs_tested++;
        for (int step = 1; step <= 9; ++step) {
            const double lambda = step / 10.0;
            for (index_t i = 0; i < mid.size(); ++i)
                mid[i] = lambda * u[i] + (1.0 - lambda) * w[i];
            if (!segment_member(mid)) {
                report.violations++;
                if (report.witness_u.empty()) {
                    report.witness_u = u;
                    report.witness_w = w;
                    report.witness_mid = mid;
                }
                break;
            }
        }
    }
    return report;
}

}  // namespace

ConvexityReport convexity_probe(const Membership& member, const BoxSampler& sampler,
                                int pairs, std::uint64_t seed) {
    return probe_segments(member, member, sampler, pairs, seed);
}

ConvexityReport convexity_probe(const FinslerBall& ball, int pairs, std::uint64_t seed) {
    // segment points get 1e-9 radius slack per the ball convexity contract
    FinslerBall slackened = ball;
    slackened.radius += 1e-9 * (1.0 + ball.radius);
    Membership member = [&ball](const Vec& w) { return ball.contains(w); };
    Membership member_slack = [&slackened](const Vec& w) { return slackened.contains(w); };
    std::optional<double> floor;
    if (ball.metric->domain_constraint == Domain::PositiveOrthant) floor = 1e-12;
    BoxSampler box = bounding_box_of(member, ball.center, 1.25, floor);
    return probe_segments(member, member_slack, box, pairs, seed);
}

double levelset_curvature_sign(const std::function<double(const Vec&)>& f, const Vec& x) {
    const index_t n = x.size();
    double xnorm = 0;
    for (double c : x) xnorm += c * c;
    const double h = 1e-4 * (1.0 + std::sqrt(xnorm));

    Vec grad(n);
    Vec w = x;
    for (index_t i = 0; i < n; ++i) {
        w[i] = x[i] + h;
        const double fp = f(w);
        w[i] = x[i] - h;
        const double fm = f(w);
        w[i] = x[i];
        grad[i] = (fp - fm) / (2.0 * h);
    }
    double gnorm = 0;
    for (double g : grad) gnorm += g * g;
    gnorm = std::sqrt(gnorm);
    if (gnorm <= 1e-8)
        throw DegenerateGradient("levelset_curvature_sign: ||grad f|| = " +
                                 std::to_string(gnorm));

    Eigen::MatrixXd H(n, n);
    const double f0 = f(x);
    for (index_t i = 0; i < n; ++i) {
        w[i] = x[i] + h;
        const double fp = f(w);
        w[i] = x[i] - h;
        const double fm = f(w);
        w[i] = x[i];
        H(i, i) = (fp - 2.0 * f0 + fm) / (h * h);
        for (index_t j = i + 1; j < n; ++j) {
            w[i] = x[i] + h; w[j] = x[j] + h;
            const double fpp = f(w);
            w[j] = x[j] - h;
            const double fpm = f(w);
            w[i] = x[i] - h; w[j] = x[j] + h;
            const double fmp = f(w);
            w[j] = x[j] - h;
            const double fmm = f(w);
            w[i] = x[i]; w[j] = x[j];
            const double hij = (fpp - fpm - fmp + fmm) / (4.0 * h * h);
            H(i, j) = hij;
            H(j, i) = hij;
        }
    }
    return H.determinant() / std::pow(gnorm, 4.0);
}

std::vector<Vec> ball_boundary_2d(const FinslerBall& ball, int samples) {
    if (ball.center.size() != 2)
        throw DimensionMismatch("ball_boundary_2d: 2-D balls only");
    std::vector<Vec> boundary;
    boundary.reserve(samples);
    for (int k = 0; k < samples; ++k) {
        const double angle = 2.0 * M_PI * k / samples;
        const Vec u = {std::cos(angle), std::sin(angle)};
        // boundary at c + s*u with s*F(c, +-u) = radius, by 1-homogeneity
        const Vec probe = (ball.orientation == Orientation::Forward) ? u : Vec{-u[0], -u[1]};
        const double fu = ball.metric->evaluate(ball.center, probe);
        const double s = ball.radius / fu;
        boundary.push_back({ball.center[0] + s * u[0], ball.center[1] + s * u[1]});
    }
    return boundary;
}

}  // namespace ftda
