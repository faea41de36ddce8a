#include "ftda/persistence.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

namespace ftda {

std::vector<DiagramPoint> PersistenceDiagram::bars(int dim) const {
    std::vector<DiagramPoint> out;
    for (const auto& p : points)
        if (p.dim == dim && (p.essential() || p.death > p.birth)) out.push_back(p);
    return out;
}

void PersistenceDiagram::sort() {
    std::sort(points.begin(), points.end(), [](const DiagramPoint& a, const DiagramPoint& b) {
        if (a.dim != b.dim) return a.dim < b.dim;
        if (a.birth != b.birth) return a.birth < b.birth;
        return a.death < b.death;
    });
}

namespace {

using Column = std::vector<index_t>;  // sorted face ids, pivot = back()

Column boundary_column(const FilteredComplex& fc, const std::map<Simplex, index_t>& idx,
                       index_t j) {
    const Simplex& s = fc.simplices[j];
    Column col;
    if (s.dim() == 0) return col;
    for (index_t drop = 0; drop < s.vertices.size(); ++drop) {
        Simplex face;
        for (index_t v = 0; v < s.vertices.size(); ++v)
            if (v != drop) face.vertices.push_back(s.vertices[v]);
        col.push_back(idx.at(face));
    }
    std::sort(col.begin(), col.end());
    return col;
}

// symmetric difference of sorted columns
Column add_columns(const Column& a, const Column& b) {
    Column out;
    out.reserve(a.size() + b.size());
    std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(),
                                  std::back_inserter(out));
    return out;
}

}  // namespace

PersistenceDiagram compute_persistence(const FilteredComplex& fc, bool use_clearing) {
    fc.check_invariants();
    const index_t n = fc.size();
    const auto idx = fc.index();

    std::vector<Column> cols(n);
    for (index_t j = 0; j < n; ++j) cols[j] = boundary_column(fc, idx, j);

    std::vector<index_t> pivot_owner(n, n);  // n = unclaimed
    std::vector<char> cleared(n, 0);
    std::vector<std::pair<index_t, index_t>> pairs;

    auto reduce_column = [&](index_t j) {
        if (cleared[j]) return;
        Column& col = cols[j];
        while (!col.empty()) {
            const index_t low = col.back();
            if (pivot_owner[low] == n) {
                pivot_owner[low] = j;
                pairs.emplace_back(low, j);
                if (use_clearing) cleared[low] = 1;  // low reduces to zero; skip it
                return;
            }
            col = add_columns(col, cols[pivot_owner[low]]);
        }
    };

    if (use_clearing) {
        for (int dim = fc.max_dimension; dim >= 1; --dim)
            for (index_t j = 0; j < n; ++j)
                if (fc.simplices[j].dim() == dim) reduce_column(j);
    } else {
        for (index_t j = 0; j < n; ++j) reduce_column(j);
    }

    PersistenceDiagram dgm;
    dgm.provenance = fc.kind;
    std::vector<char> paired(n, 0);
    for (auto [i, j] : pairs) {
        paired[i] = 1;
        paired[j] = 1;
        dgm.points.push_back({fc.simplices[i].dim(), fc.values[i], fc.values[j]});
    }
    for (index_t j = 0; j < n; ++j)
        if (!paired[j]) dgm.points.push_back({fc.simplices[j].dim(), fc.values[j],
                                              kInfiniteDeath});
    dgm.sort();
    return dgm;
}

namespace {

// rank over GF(2) of the boundary map from k-simplices to (k-1)-simplices,
// restricted to the sublevel complex
int boundary_rank(const FilteredComplex& fc, const std::map<Simplex, index_t>& idx,
                  double epsilon, int k) {
    if (k < 1) return 0;
    std::vector<Column> columns;
    for (index_t j = 0; j < fc.size(); ++j) {
        if (fc.simplices[j].dim() != k || fc.values[j] > epsilon) continue;
        columns.push_back(boundary_column(fc, idx, j));
    }
    std::map<index_t, Column> pivots;
    int rank = 0;
    for (Column col : columns) {
        while (!col.empty()) {
            auto it = pivots.find(col.back());
            if (it == pivots.end()) {
                pivots.emplace(col.back(), std::move(col));
                ++rank;
                break;
            }
            col = add_columns(col, it->second);
        }
    }
    return rank;
}

}  // namespace

int betti_at(const FilteredComplex& fc, double epsilon, int k) {
    fc.check_invariants();
    if (k < 0) throw ConfigError("betti_at: negative dimension");
    const auto idx = fc.index();
    int n_k = 0;
    for (index_t j = 0; j < fc.size(); ++j)
        if (fc.simplices[j].dim() == k && fc.values[j] <= epsilon) ++n_k;
    const int rank_k = boundary_rank(fc, idx, epsilon, k);
    const int rank_k1 = boundary_rank(fc, idx, epsilon, k + 1);
    return n_k - rank_k - rank_k1;
}

namespace {

struct FiniteBar {
    double birth, death;
    double diag_cost() const { return 0.5 * (death - birth); }
};

double linf(const FiniteBar& a, const FiniteBar& b) {
    return std::max(std::abs(a.birth - b.birth), std::abs(a.death - b.death));
}

// perfect-matching feasibility at threshold r for the standard bipartite
// reduction (points of one side may also match their diagonal copies)
class BottleneckFeasibility {
public:
    BottleneckFeasibility(const std::vector<FiniteBar>& a, const std::vector<FiniteBar>& b)
        : a_(a), b_(b), na_(a.size()), nb_(b.size()) {}

    bool feasible(double r) const {
        // left nodes: a-points [0, na) then diagonal copies for b [na, na+nb)
        // right nodes: b-points [0, nb) then diagonal copies for a [nb, nb+na)
        const index_t total = na_ + nb_;
        std::vector<index_t> match_right(total, total);
        std::vector<char> seen;
        std::function<bool(index_t)> augment = [&](index_t u) -> bool {
            auto try_right = [&](index_t v) -> bool {
                if (seen[v]) return false;
                seen[v] = 1;
                if (match_right[v] == total || augment(match_right[v])) {
                    match_right[v] = u;
                    return true;
                }
                return false;
            };
            if (u < na_) {
                for (index_t v = 0; v < nb_; ++v)
                    if (linf(a_[u], b_[v]) <= r && try_right(v)) return true;
                if (a_[u].diag_cost() <= r && try_right(nb_ + u)) return true;
            } else {
                const index_t bj = u - na_;  // diagonal copy serving b_j
                if (b_[bj].diag_cost() <= r && try_right(bj)) return true;
                for (index_t v = nb_; v < total; ++v)  // diag-diag, cost 0
                    if (try_right(v)) return true;
            }
            return false;
        };
        for (index_t u = 0; u < total; ++u) {
            seen.assign(total, 0);
            if (!augment(u)) return false;
        }
        return true;
    }

private:
    const std::vector<FiniteBar>& a_;
    const std::vector<FiniteBar>& b_;
    index_t na_, nb_;
};

// min over perfect matchings of max |x - y| between two equal-size sorted
// multisets; used for essential bars (only births differ). For sorted inputs
// the identity matching is optimal.
double sorted_linf(const std::vector<double>& a, const std::vector<double>& b) {
    double worst = 0.0;
    for (index_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
    return worst;
}

}  // namespace

double bottleneck_distance(const PersistenceDiagram& a, const PersistenceDiagram& b,
                           int dim) {
    std::vector<FiniteBar> fa, fb;
    std::vector<double> ea, eb;
    for (const auto& p : a.points) {
        if (p.dim != dim) continue;
        if (p.essential())
            ea.push_back(p.birth);
        else if (p.death > p.birth)
            fa.push_back({p.birth, p.death});
    }
    for (const auto& p : b.points) {
        if (p.dim != dim) continue;
        if (p.essential())
            eb.push_back(p.birth);
        else if (p.death > p.birth)
            fb.push_back({p.birth, p.death});
    }
    if (ea.size() != eb.size())
        throw InfiniteMismatch("bottleneck_distance: " + std::to_string(ea.size()) + " vs " +
                               std::to_string(eb.size()) +
                               " essential bars; distance is infinite");
    std::sort(ea.begin(), ea.end());
    std::sort(eb.begin(), eb.end());
    const double essential_cost = sorted_linf(ea, eb);

    if (fa.empty() && fb.empty()) return essential_cost;

    std::set<double> candidates{0.0};
    for (const auto& x : fa) candidates.insert(x.diag_cost());
    for (const auto& y : fb) candidates.insert(y.diag_cost());
    for (const auto& x : fa)
        for (const auto& y : fb) candidates.insert(linf(x, y));

    std::vector<double> cs(candidates.begin(), candidates.end());
    BottleneckFeasibility feas(fa, fb);
    index_t lo = 0, hi = cs.size() - 1;
    if (!feas.feasible(cs[hi]))  // all-diagonal matching makes the max cost feasible
        throw std::logic_error("bottleneck_distance: no feasible candidate");
    while (lo < hi) {
        const index_t mid = lo + (hi - lo) / 2;
        if (feas.feasible(cs[mid]))
            hi = mid;
        else
            lo = mid + 1;
    }
    return std::max(cs[lo], essential_cost);
}

}  // namespace ftda
