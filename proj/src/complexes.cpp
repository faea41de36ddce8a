#include "ftda/complexes.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "ftda/parallel.hpp"

namespace ftda {

void PointCloud::validate() const {
    for (const Vec& p : points)
        if (static_cast<int>(p.size()) != dimension)
            throw DimensionMismatch("PointCloud: point of dimension " +
                                    std::to_string(p.size()) + " in a " +
                                    std::to_string(dimension) + "-dimensional cloud");
    if (!labels.empty() && labels.size() != points.size())
        throw ConfigError("PointCloud: label count does not match point count");
    for (index_t i = 0; i < points.size(); ++i)
        for (index_t j = i + 1; j < points.size(); ++j)
            if (points[i] == points[j])
                throw ConfigError("PointCloud: duplicate points at indices " +
                                  std::to_string(i) + " and " + std::to_string(j));
}

bool PointCloud::metric_domain_ok(const MetricSpec& metric) const {
    if (metric.dimension != dimension) return false;
    for (const Vec& p : points) {
        try {
            metric.check_point(p);
        } catch (const DomainError&) {
            return false;
        }
    }
    return true;
}

std::string to_string(ComplexKind kind) {
    switch (kind) {
        case ComplexKind::Rips: return "rips";
        case ComplexKind::Delta: return "delta";
        case ComplexKind::CechForward: return "cech_forward";
        case ComplexKind::CechBackward: return "cech_backward";
    }
    return "?";
}

ComplexKind complex_kind_from_string(const std::string& s) {
    if (s == "rips") return ComplexKind::Rips;
    if (s == "delta") return ComplexKind::Delta;
    if (s == "cech_forward" || s == "cech") return ComplexKind::CechForward;
    if (s == "cech_backward") return ComplexKind::CechBackward;
    throw ConfigError("unknown complex kind: " + s);
}

std::optional<index_t> FilteredComplex::find(const Simplex& s) const {
    for (index_t i = 0; i < simplices.size(); ++i)
        if (simplices[i] == s) return i;
    return std::nullopt;
}

std::map<Simplex, index_t> FilteredComplex::index() const {
    std::map<Simplex, index_t> out;
    for (index_t i = 0; i < simplices.size(); ++i) out.emplace(simplices[i], i);
    return out;
}

std::vector<index_t> FilteredComplex::at_scale(double epsilon) const {
    std::vector<index_t> ids;
    for (index_t i = 0; i < simplices.size(); ++i)
        if (values[i] <= epsilon) ids.push_back(i);
    return ids;
}

void FilteredComplex::sort_for_reduction() {
    std::vector<index_t> order(simplices.size());
    std::iota(order.begin(), order.end(), index_t{0});
    std::sort(order.begin(), order.end(), [&](index_t a, index_t b) {
        if (values[a] != values[b]) return values[a] < values[b];
        if (simplices[a].dim() != simplices[b].dim())
            return simplices[a].dim() < simplices[b].dim();
        return simplices[a].vertices < simplices[b].vertices;
    });
    std::vector<Simplex> s2(simplices.size());
    std::vector<double> v2(values.size());
    std::vector<Vec> w2(witnesses.empty() ? 0 : witnesses.size());
    for (index_t i = 0; i < order.size(); ++i) {
        s2[i] = std::move(simplices[order[i]]);
        v2[i] = values[order[i]];
        if (!witnesses.empty()) w2[i] = std::move(witnesses[order[i]]);
    }
    simplices = std::move(s2);
    values = std::move(v2);
    witnesses = std::move(w2);
}

void FilteredComplex::check_invariants() const {
    if (simplices.size() != values.size())
        throw InvalidFiltration("value count does not match simplex count");
    auto idx = index();
    for (index_t i = 0; i < simplices.size(); ++i) {
        const Simplex& s = simplices[i];
        if (s.vertices.empty()) throw InvalidFiltration("empty simplex");
        if (!std::is_sorted(s.vertices.begin(), s.vertices.end()) ||
            std::adjacent_find(s.vertices.begin(), s.vertices.end()) != s.vertices.end())
            throw InvalidFiltration("vertices not strictly increasing");
        if (s.vertices.back() >= vertex_count || s.vertices.front() < 0)
            throw InvalidFiltration("vertex id out of range");
        if (s.dim() < 1) continue;
        for (index_t drop = 0; drop < s.vertices.size(); ++drop) {
            Simplex face;
            for (index_t v = 0; v < s.vertices.size(); ++v)
                if (v != drop) face.vertices.push_back(s.vertices[v]);
            auto it = idx.find(face);
            if (it == idx.end()) throw InvalidFiltration("complex not closed under faces");
            if (values[it->second] > values[i])
                throw InvalidFiltration("face value exceeds coface value");
        }
    }
    for (index_t i = 1; i < simplices.size(); ++i) {
        const bool ordered =
            values[i - 1] < values[i] ||
            (values[i - 1] == values[i] &&
             (simplices[i - 1].dim() < simplices[i].dim() ||
              (simplices[i - 1].dim() == simplices[i].dim() &&
               simplices[i - 1].vertices < simplices[i].vertices)));
        if (!ordered) throw InvalidFiltration("simplices not sorted for reduction");
    }
}

std::vector<std::vector<double>> pointwise_distance_matrix(const PointCloud& cloud,
                                                           const MetricSpec& metric) {
    cloud.validate();
    const index_t n = cloud.size();
    std::vector<std::vector<double>> d(n, std::vector<double>(n, 0.0));
    parallel_for(n, [&](index_t i) {
        for (index_t j = 0; j < n; ++j) {
            if (i == j) continue;
            d[i][j] = pointwise_distance(metric, cloud.points[i], cloud.points[i],
                                         cloud.points[j], Orientation::Forward);
        }
    });
    return d;
}

namespace {

// flag expansion over a symmetric edge-weight matrix; simplex value = max edge
FilteredComplex build_flag(const PointCloud& cloud, ComplexKind kind,
                           const std::vector<std::vector<double>>& weight, int max_dim) {
    const int n = static_cast<int>(cloud.size());
    FilteredComplex fc;
    fc.kind = kind;
    fc.vertex_count = n;
    fc.max_dimension = max_dim;
    for (int v = 0; v < n; ++v) {
        fc.simplices.push_back({{v}});
        fc.values.push_back(0.0);
    }
    std::vector<int> stack;
    std::function<void(int, double)> extend = [&](int last, double value) {
        if (static_cast<int>(stack.size()) - 1 >= max_dim) return;
        for (int m = last + 1; m < n; ++m) {
            double v = value;
            for (int s : stack) v = std::max(v, weight[s][m]);
            stack.push_back(m);
            fc.simplices.push_back({stack});
            fc.values.push_back(v);
            extend(m, v);
            stack.pop_back();
        }
    };
    if (max_dim >= 1) {
        for (int v = 0; v < n; ++v) {
            stack = {v};
            extend(v, 0.0);
        }
    }
    fc.sort_for_reduction();
    return fc;
}

}  // namespace

FilteredComplex build_rips(const PointCloud& cloud, const MetricSpec& metric, int max_dim) {
    if (max_dim < 0) throw ConfigError("build_rips: max_dim must be >= 0");
    const auto d = pointwise_distance_matrix(cloud, metric);
    const index_t n = cloud.size();
    std::vector<std::vector<double>> w(n, std::vector<double>(n, 0.0));
    for (index_t i = 0; i < n; ++i)
        for (index_t j = 0; j < n; ++j) w[i][j] = std::max(d[i][j], d[j][i]);
    return build_flag(cloud, ComplexKind::Rips, w, max_dim);
}

FilteredComplex build_delta(const PointCloud& cloud, const MetricSpec& metric, int max_dim) {
    if (max_dim < 0) throw ConfigError("build_delta: max_dim must be >= 0");
    const auto d = pointwise_distance_matrix(cloud, metric);
    const index_t n = cloud.size();
    std::vector<std::vector<double>> w(n, std::vector<double>(n, 0.0));
    // entry at eps exactly when d_ij + d_ji <= 2 eps
    for (index_t i = 0; i < n; ++i)
        for (index_t j = 0; j < n; ++j) w[i][j] = 0.5 * (d[i][j] + d[j][i]);
    return build_flag(cloud, ComplexKind::Delta, w, max_dim);
}

FilteredComplex build_cech(const PointCloud& cloud, const MetricSpec& metric, int max_dim,
                           Orientation orientation, double tol, double eps_max) {
    if (max_dim < 0) throw ConfigError("build_cech: max_dim must be >= 0");
    if (max_dim > static_cast<int>(cloud.size()) - 1)
        throw ConfigError("build_cech: max_dim exceeds vertex count - 1");
    if (!(tol > 0)) throw ConfigError("build_cech: tol must be positive");
    const auto d = pointwise_distance_matrix(cloud, metric);
    const int n = static_cast<int>(cloud.size());

    if (std::isinf(eps_max)) {
        // default cutoff: max Rips edge weight (Rips(eps) inside Cech(eps), so
        // nothing real is pruned)
        eps_max = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) eps_max = std::max(eps_max, std::max(d[i][j], d[j][i]));
    }

    FilteredComplex fc;
    fc.kind = orientation == Orientation::Forward ? ComplexKind::CechForward
                                                  : ComplexKind::CechBackward;
    fc.vertex_count = n;
    fc.max_dimension = max_dim;
    for (int v = 0; v < n; ++v) {
        fc.simplices.push_back({{v}});
        fc.values.push_back(0.0);
        fc.witnesses.push_back(cloud.points[v]);
    }

    std::map<Simplex, std::pair<double, Vec>> known;  // value + witness per kept simplex
    for (int v = 0; v < n; ++v) known[{{v}}] = {0.0, cloud.points[v]};

    std::vector<Simplex> frontier = fc.simplices;  // dimension d-1 survivors
    for (int dim = 1; dim <= max_dim && !frontier.empty(); ++dim) {
        // candidates: extend by a larger vertex, all facets must be known
        std::vector<Simplex> candidates;
        for (const Simplex& s : frontier) {
            for (int m = s.vertices.back() + 1; m < n; ++m) {
                Simplex t = s;
                t.vertices.push_back(m);
                bool closed = true;
                for (index_t drop = 0; closed && drop + 1 < t.vertices.size(); ++drop) {
                    Simplex face;
                    for (index_t v = 0; v < t.vertices.size(); ++v)
                        if (v != drop) face.vertices.push_back(t.vertices[v]);
                    closed = known.count(face) > 0;
                }
                if (closed) candidates.push_back(std::move(t));
            }
        }
        struct Solved { double value; Vec witness; bool converged; };
        std::vector<Solved> solved(candidates.size());
        parallel_for(candidates.size(), [&](index_t c) {
            std::vector<Vec> pts;
            for (int v : candidates[c].vertices) pts.push_back(cloud.points[v]);
            MinimaxResult res = enclosing_radius(metric, pts, orientation, tol);
            solved[c] = {res.radius, res.witness, res.converged};
        });
        std::vector<Simplex> next;
        for (index_t c = 0; c < candidates.size(); ++c) {
            const Simplex& s = candidates[c];
            if (!solved[c].converged)
                throw ConvergenceError("build_cech: solver did not converge on simplex " +
                                       [&] {
                                           std::string out = "{";
                                           for (int v : s.vertices)
                                               out += std::to_string(v) + ",";
                                           out.back() = '}';
                                           return out;
                                       }());
            double value = solved[c].value;
            for (index_t drop = 0; drop < s.vertices.size(); ++drop) {
                Simplex face;
                for (index_t v = 0; v < s.vertices.size(); ++v)
                    if (v != drop) face.vertices.push_back(s.vertices[v]);
                value = std::max(value, known.at(face).first);  // monotone over faces
            }
            if (value > eps_max) continue;
            known[s] = {value, solved[c].witness};
            fc.simplices.push_back(s);
            fc.values.push_back(value);
            fc.witnesses.push_back(solved[c].witness);
            next.push_back(s);
        }
        frontier = std::move(next);
    }
    fc.sort_for_reduction();
    return fc;
}

InclusionReport verify_inclusion(const FilteredComplex& a, const FilteredComplex& b,
                                 double scale, double offset) {
    if (a.vertex_count != b.vertex_count)
        throw VertexSetMismatch("verify_inclusion: vertex counts " +
                                std::to_string(a.vertex_count) + " vs " +
                                std::to_string(b.vertex_count));
    if (a.max_dimension != b.max_dimension)
        throw VertexSetMismatch("verify_inclusion: max dimensions differ");
    InclusionReport report;
    report.scale = scale;
    report.offset = offset;
    auto idx_b = b.index();
    for (index_t i = 0; i < a.size(); ++i) {
        const double bound = scale * a.values[i] + offset + 1e-9;
        auto it = idx_b.find(a.simplices[i]);
        const double vb = (it == idx_b.end()) ? std::numeric_limits<double>::infinity()
                                              : b.values[it->second];
        report.checked++;
        report.max_gap = std::max(report.max_gap, vb - (scale * a.values[i] + offset));
        if (vb > bound && report.passed) {
            report.passed = false;
            report.counterexample = a.simplices[i];
            report.counterexample_va = a.values[i];
            report.counterexample_vb = vb;
        }
    }
    return report;
}

bool included_at(const FilteredComplex& a, double eps_a, const FilteredComplex& b,
                 double eps_b) {
    auto idx_b = b.index();
    for (index_t i = 0; i < a.size(); ++i) {
        if (a.values[i] > eps_a) continue;
        auto it = idx_b.find(a.simplices[i]);
        if (it == idx_b.end() || b.values[it->second] > eps_b + 1e-9) return false;
    }
    return true;
}

double measured_inclusion_delta(const FilteredComplex& cech, const PointCloud& cloud,
                                const MetricSpec& metric) {
    if (cech.witnesses.empty())
        throw ConfigError("measured_inclusion_delta: complex carries no witnesses");
    double delta = 0.0;
    for (index_t s = 0; s < cech.size(); ++s) {
        if (cech.simplices[s].dim() < 1) continue;
        const Vec& y = cech.witnesses[s];
        for (int i : cech.simplices[s].vertices)
            for (int j : cech.simplices[s].vertices)
                delta = std::max(delta, pointwise_distance(metric, cloud.points[i], y,
                                                           cloud.points[j],
                                                           Orientation::Forward));
    }
    return delta;
}

}  // namespace ftda
