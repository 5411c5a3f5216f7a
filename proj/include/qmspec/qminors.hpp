#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qmspec/diagrams.hpp"
#include "qmspec/qtorus.hpp"

namespace qmspec {

/// Row/column selection of a square submatrix, both strictly increasing
/// and of equal size >= 1. Ordered lexicographically (rows, then cols).
struct MinorIndex {
    std::vector<int> rows;
    std::vector<int> cols;
    auto operator<=>(const MinorIndex&) const = default;
};

/// Quantum determinant of the selected submatrix:
/// sum over permutations s of (-q)^inv(s) * x_{r1,c_s(1)} * ... in
/// increasing row order. Implemented as a DFS over rows sharing partial
/// products, pruning branches through zero entries.
TorusElement det_q(const TorusPresentation& p, const QuantumMatrix& M,
                   const MinorIndex& idx);

/// True iff every m x m quantum minor of M vanishes.
bool all_minors_vanish(const TorusPresentation& p, const QuantumMatrix& M, int m);

struct ClassificationRecord {
    Diagram diagram;
    int rank = 0;                       // max size of a nonvanishing minor
    std::optional<MinorIndex> witness;  // lex-least nonzero minor of that size
    bool gap_free = false;              // vanishing was monotone in size

    // {"diagram":"011/011/001","rank":2,"witness":{"rows":[1,2],"cols":[1,2]},"gap_free":true}
    std::string to_json() const;
};

/// Restores w and determines its rank: the largest m with a nonvanishing
/// m x m minor (0 when the matrix is zero). Verifies monotonicity on both
/// sides — every size above the rank vanishes completely, every size
/// below has a nonzero minor — and throws GapViolationError otherwise;
/// the rank classes must partition the diagrams.
ClassificationRecord classify_rank(const TorusPresentation& p, const Diagram& w);

/// classify_rank over every diagram, records delivered in the canonical
/// diagram order regardless of the worker count.
void classify_all(int n, int jobs,
                  const std::function<void(const ClassificationRecord&)>& sink);

/// Rank histogram over all of W for this grid size.
std::map<int, long long> rank_census(int n, int jobs = 1);

} // namespace qmspec
