#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "ftda/complexes.hpp"
#include "ftda/persistence.hpp"
#include "ftda/types.hpp"

namespace ftda {

// Relation between two point clouds with full projections on both sides.
struct Correspondence {
    std::vector<std::pair<int, int>> pairs;

    static Correspondence identity(int n);
    void validate(int nx, int ny) const;  // throws InvalidCorrespondence
};

struct DistortionReport {
    double distortion = 0.0;
    std::array<std::pair<int, int>, 2> argmax_pairs{};  // the two pairs achieving the sup
    double gh_upper_bound = 0.0;                        // distortion / 2
};

// dis(C) = sup |d_x(x,x') - d_y(y,y')| over ordered pairs of pairs, with the
// pointwise quasi-distances d_x(x,x') = F(x, x'-x).
DistortionReport distortion(const PointCloud& x_cloud, const PointCloud& y_cloud,
                            const MetricSpec& metric, const Correspondence& corr);

// Exact d_GH = 1/2 min over all full-projection correspondences; requires
// |X| * |Y| <= 16 (exhaustive bitmask enumeration).
double gromov_hausdorff_exact(const PointCloud& x_cloud, const PointCloud& y_cloud,
                              const MetricSpec& metric);

struct StabilityRecord {
    std::uint64_t seed = 0;
    std::string metric;
    ComplexKind kind = ComplexKind::Rips;
    double noise = 0.0;
    struct PerDim {
        int dim = 0;
        double d_b = 0.0;
        double gh_bound = 0.0;  // 1/2 dis(identity correspondence)
        bool pass = false;      // d_b <= gh_bound + 1e-9
    };
    std::vector<PerDim> dims;
    bool all_pass() const {
        for (const auto& d : dims)
            if (!d.pass) return false;
        return true;
    }
};

// Perturbs the cloud (additive Gaussian noise, or multiplicative log-normal on
// positive-orthant domains), builds both filtrations, and records per-dimension
// bottleneck distances against the 1/2 dis(C_identity) bound.
StabilityRecord stability_trial(const PointCloud& cloud, const MetricSpec& metric,
                                double noise, ComplexKind kind, int max_dim,
                                std::uint64_t seed);

}  // namespace ftda
