#pragma once

#include <limits>
#include <vector>

#include "ftda/complexes.hpp"
#include "ftda/types.hpp"

namespace ftda {

constexpr double kInfiniteDeath = std::numeric_limits<double>::infinity();

struct DiagramPoint {
    int dim = 0;
    double birth = 0.0;
    double death = kInfiniteDeath;

    bool essential() const { return std::isinf(death); }
    double persistence() const { return death - birth; }
};

struct PersistenceDiagram {
    ComplexKind provenance = ComplexKind::Rips;
    std::vector<DiagramPoint> points;  // includes zero-length pairs

    // bars of one dimension with death > birth (plus essential bars)
    std::vector<DiagramPoint> bars(int dim) const;
    // deterministic sort (dim, birth, death) applied to exported views
    void sort();
};

// Standard column reduction over the two-element field. With `use_clearing`
// columns are processed by decreasing dimension and paired births cleared.
PersistenceDiagram compute_persistence(const FilteredComplex& complex,
                                       bool use_clearing = true);

// Betti number of the sublevel complex at epsilon via GF(2) rank computation,
// independent of the reduction pairing.
int betti_at(const FilteredComplex& complex, double epsilon, int k);

// Exact bottleneck distance between the dimension-dim bars of two diagrams.
// Candidates are the achievable matching costs, so the binary search
// terminates on an exact value. Throws InfiniteMismatch when the essential
// bar counts differ (the distance is infinite).
double bottleneck_distance(const PersistenceDiagram& a, const PersistenceDiagram& b,
                           int dim);

}  // namespace ftda
