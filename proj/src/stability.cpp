#include "ftda/stability.hpp"

#include <algorithm>
#include <cmath>

#include "ftda/rng.hpp"

namespace ftda {

Correspondence Correspondence::identity(int n) {
    Correspondence c;
    for (int i = 0; i < n; ++i) c.pairs.emplace_back(i, i);
    return c;
}

void Correspondence::validate(int nx, int ny) const {
    std::vector<char> seen_x(nx, 0), seen_y(ny, 0);
    for (auto [i, j] : pairs) {
        if (i < 0 || i >= nx || j < 0 || j >= ny)
            throw InvalidCorrespondence("pair (" + std::to_string(i) + ", " +
                                        std::to_string(j) + ") out of range");
        seen_x[i] = 1;
        seen_y[j] = 1;
    }
    for (int i = 0; i < nx; ++i)
        if (!seen_x[i])
            throw InvalidCorrespondence("X index " + std::to_string(i) + " unmatched");
    for (int j = 0; j < ny; ++j)
        if (!seen_y[j])
            throw InvalidCorrespondence("Y index " + std::to_string(j) + " unmatched");
}

DistortionReport distortion(const PointCloud& x_cloud, const PointCloud& y_cloud,
                            const MetricSpec& metric, const Correspondence& corr) {
    corr.validate(static_cast<int>(x_cloud.size()), static_cast<int>(y_cloud.size()));
    const auto dx = pointwise_distance_matrix(x_cloud, metric);
    const auto dy = pointwise_distance_matrix(y_cloud, metric);
    DistortionReport report;
    for (index_t a = 0; a < corr.pairs.size(); ++a)
        for (index_t b = 0; b < corr.pairs.size(); ++b) {
            if (a == b) continue;
            const auto [xi, yi] = corr.pairs[a];
            const auto [xj, yj] = corr.pairs[b];
            const double gap = std::abs(dx[xi][xj] - dy[yi][yj]);
            if (gap > report.distortion) {
                report.distortion = gap;
                report.argmax_pairs = {corr.pairs[a], corr.pairs[b]};
            }
        }
    report.gh_upper_bound = 0.5 * report.distortion;
    return report;
}

double gromov_hausdorff_exact(const PointCloud& x_cloud, const PointCloud& y_cloud,
                              const MetricSpec& metric) {
    const int nx = static_cast<int>(x_cloud.size());
    const int ny = static_cast<int>(y_cloud.size());
    if (nx * ny > 16)
        throw SizeLimitExceeded("gromov_hausdorff_exact: |X|*|Y| = " +
                                std::to_string(nx * ny) + " exceeds 16");
    const auto dx = pointwise_distance_matrix(x_cloud, metric);
    const auto dy = pointwise_distance_matrix(y_cloud, metric);

    const int cells = nx * ny;
    double best = std::numeric_limits<double>::infinity();
    for (std::uint32_t mask = 1; mask < (1u << cells); ++mask) {
        // full projections on both sides
        std::uint32_t rows = 0, colsmask = 0;
        for (int c = 0; c < cells; ++c)
            if (mask & (1u << c)) {
                rows |= 1u << (c / ny);
                colsmask |= 1u << (c % ny);
            }
        if (rows != (1u << nx) - 1u || colsmask != (1u << ny) - 1u) continue;

        std::vector<std::pair<int, int>> pairs;
        for (int c = 0; c < cells; ++c)
            if (mask & (1u << c)) pairs.emplace_back(c / ny, c % ny);
        double dis = 0.0;
        for (index_t a = 0; a < pairs.size() && dis < best; ++a)
            for (index_t b = 0; b < pairs.size(); ++b) {
                if (a == b) continue;
                dis = std::max(dis, std::abs(dx[pairs[a].first][pairs[b].first] -
                                             dy[pairs[a].second][pairs[b].second]));
            }
        best = std::min(best, dis);
        if (best == 0.0) break;
    }
    return 0.5 * best;
}

namespace {

PointCloud perturb(const PointCloud& cloud, const MetricSpec& metric, double noise,
                   Rng& rng) {
    PointCloud out = cloud;
    const bool multiplicative = metric.domain_constraint == Domain::PositiveOrthant;
    for (auto& p : out.points)
        for (auto& x : p)
            x = multiplicative ? x * std::exp(noise * rng.normal())
                               : x + noise * rng.normal();
    return out;
}

FilteredComplex build_kind(const PointCloud& cloud, const MetricSpec& metric,
                           ComplexKind kind, int max_dim) {
    switch (kind) {
        case ComplexKind::Rips: return build_rips(cloud, metric, max_dim);
        case ComplexKind::Delta: return build_delta(cloud, metric, max_dim);
        case ComplexKind::CechForward:
            return build_cech(cloud, metric, max_dim, Orientation::Forward, 1e-7);
        case ComplexKind::CechBackward:
            return build_cech(cloud, metric, max_dim, Orientation::Backward, 1e-7);
    }
    throw ConfigError("build_kind: unknown kind");
}

}  // namespace

StabilityRecord stability_trial(const PointCloud& cloud, const MetricSpec& metric,
                                double noise, ComplexKind kind, int max_dim,
                                std::uint64_t seed) {
    Rng rng(seed);
    PointCloud perturbed = perturb(cloud, metric, noise, rng);
    if (!perturbed.metric_domain_ok(metric))
        throw DomainError("stability_trial: perturbed cloud left the metric domain");

    const FilteredComplex kx = build_kind(cloud, metric, kind, max_dim);
    const FilteredComplex ky = build_kind(perturbed, metric, kind, max_dim);
    const PersistenceDiagram dgm_x = compute_persistence(kx);
    const PersistenceDiagram dgm_y = compute_persistence(ky);
    const DistortionReport dis =
        distortion(cloud, perturbed, metric, Correspondence::identity(static_cast<int>(cloud.size())));

    StabilityRecord record;
    record.seed = seed;
    record.metric = metric.name;
    record.kind = kind;
    record.noise = noise;
    for (int dim : {0, 1}) {
        StabilityRecord::PerDim d;
        d.dim = dim;
        d.d_b = bottleneck_distance(dgm_x, dgm_y, dim);
        d.gh_bound = dis.gh_upper_bound;
        d.pass = d.d_b <= d.gh_bound + 1e-9;
        record.dims.push_back(d);
    }
    return record;
}

}  // namespace ftda
