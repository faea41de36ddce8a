#pragma once

#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ftda/geometry.hpp"
#include "ftda/metrics.hpp"
#include "ftda/types.hpp"

namespace ftda {

struct PointCloud {
    int dimension = 0;
    std::vector<Vec> points;
    std::vector<std::string> labels;  // optional, empty or one per point

    index_t size() const { return points.size(); }
    // distinct points, uniform dimension
    void validate() const;
    bool metric_domain_ok(const MetricSpec& metric) const;
};

struct Simplex {
    std::vector<int> vertices;  // strictly increasing, nonempty

    int dim() const { return static_cast<int>(vertices.size()) - 1; }
    bool operator==(const Simplex&) const = default;
    auto operator<=>(const Simplex&) const = default;
};

enum class ComplexKind { Rips, Delta, CechForward, CechBackward };

std::string to_string(ComplexKind kind);
ComplexKind complex_kind_from_string(const std::string& s);

// Simplices with entry values, closed under faces, monotone along cofaces, and
// sorted by (value, dimension, lexicographic vertices) for matrix reduction.
struct FilteredComplex {
    ComplexKind kind = ComplexKind::Rips;
    int vertex_count = 0;
    int max_dimension = 2;
    std::vector<Simplex> simplices;
    std::vector<double> values;
    std::vector<Vec> witnesses;  // Cech builds only: common point per simplex

    index_t size() const { return simplices.size(); }
    std::optional<index_t> find(const Simplex& s) const;  // linear scan
    std::map<Simplex, index_t> index() const;             // vertex-set lookup table
    // ids of simplices with value <= epsilon
    std::vector<index_t> at_scale(double epsilon) const;
    void sort_for_reduction();
    // closure + monotonicity; throws InvalidFiltration
    void check_invariants() const;
};

// Matrix of pointwise quasi-distances d[i][j] = F(p_i, p_j - p_i).
std::vector<std::vector<double>> pointwise_distance_matrix(const PointCloud& cloud,
                                                           const MetricSpec& metric);

// Generalized Vietoris-Rips: edge weight max(d_i(p_i,p_j), d_j(p_j,p_i)), flag
// expansion, vertices at 0.
FilteredComplex build_rips(const PointCloud& cloud, const MetricSpec& metric, int max_dim);

// Delta complex: edge weight (d_i(p_i,p_j) + d_j(p_j,p_i)) / 2, flag expansion.
FilteredComplex build_delta(const PointCloud& cloud, const MetricSpec& metric, int max_dim);

// Generalized Cech: simplex value = smallest common-ball radius of its vertex
// set (minimax solver), capped by the best single-vertex witness and forced
// monotone over faces. eps_max prunes the enumeration; the default (max Rips
// edge weight) prunes nothing.
FilteredComplex build_cech(const PointCloud& cloud, const MetricSpec& metric, int max_dim,
                           Orientation orientation, double tol,
                           double eps_max = std::numeric_limits<double>::infinity());

struct InclusionReport {
    bool passed = true;
    index_t checked = 0;
    double scale = 1.0;
    double offset = 0.0;
    std::optional<Simplex> counterexample;
    double counterexample_va = 0.0;
    double counterexample_vb = 0.0;
    double max_gap = -std::numeric_limits<double>::infinity();  // max v_b - (scale*v_a + offset)
};

// Checks v_b(s) <= scale * v_a(s) + offset + 1e-9 for every simplex of a,
// i.e. a(eps) included in b(scale*eps + offset) for every eps simultaneously.
InclusionReport verify_inclusion(const FilteredComplex& a, const FilteredComplex& b,
                                 double scale, double offset = 0.0);

// Literal inclusion of sublevel simplex sets: a at eps_a inside b at eps_b
// (with 1e-9 slack on the b side).
bool included_at(const FilteredComplex& a, double eps_a, const FilteredComplex& b,
                 double eps_b);

// Measured delta of the Cech-to-Rips inclusion: sup over simplices of
// sup_{i,j} d_{p_i}(y, p_j) with y the simplex witness.
double measured_inclusion_delta(const FilteredComplex& cech, const PointCloud& cloud,
                                const MetricSpec& metric);

}  // namespace ftda
