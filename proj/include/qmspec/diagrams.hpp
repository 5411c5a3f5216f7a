#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qmspec/errors.hpp"
#include "qmspec/qtorus.hpp" // Position

namespace qmspec {

// Grid subsets are uint64_t bit masks, row-major, bit (i-1)*n + (a-1) for
// cell (i,a); n <= 6 keeps everything within 36 bits.
inline int cell_bit(int n, int i, int a) { return (i - 1) * n + (a - 1); }
inline bool mask_contains(uint64_t mask, int n, int i, int a) {
    return (mask >> cell_bit(n, i, a)) & 1u;
}

/// Compares two masks as row-major bit strings ('0' < '1', cell (1,1)
/// first). This is NOT integer order: the lowest differing bit decides.
bool bitstring_less(uint64_t a, uint64_t b);

/// Membership test for W: every cell must be row-coverable (its whole row
/// prefix is present) or column-coverable (its whole column prefix is
/// present). Equivalent to "union of truncated rows and columns"; the
/// equivalence is cross-checked against brute force in the tests.
bool is_diagram(int n, uint64_t cells);

/// First cell (row-major) that is neither row- nor column-coverable, or
/// nullopt when the grid is a valid diagram. Drives CLI error messages.
std::optional<Position> first_uncoverable_cell(int n, uint64_t cells);

/// A validated element of W.
class Diagram {
public:
    Diagram(int n, uint64_t cells); // throws NotADiagramError
    int n() const { return n_; }
    uint64_t cells() const { return cells_; }
    bool contains(int i, int a) const { return mask_contains(cells_, n_, i, a); }
    int cell_count() const;

    // "011/011/001": rows joined by '/', '1' = cell present
    std::string str() const;
    static Diagram parse(std::string_view text); // ParseError / NotADiagramError

    bool operator==(const Diagram&) const = default;
    // row-major bit-string order; the canonical enumeration order
    bool operator<(const Diagram& rhs) const;

private:
    struct Unchecked {};
    Diagram(int n, uint64_t cells, Unchecked) : n_(n), cells_(cells) {}
    friend void enumerate_W(int n, const std::function<void(const Diagram&)>& fn);

    int n_;
    uint64_t cells_;
};

/// Emits every element of W for the given grid size exactly once, in
/// increasing bit-string order. Streaming because |W| reaches 22.9M at
/// n=6. Throws SizeTooLargeError outside n in [1,6].
void enumerate_W(int n, const std::function<void(const Diagram&)>& fn);

/// Materialized variant for sizes where the full list is small (n <= 5).
std::vector<Diagram> all_diagrams(int n);

/// Strictly increasing sequence 1 <= r_1 < ... < r_t <= n; t may be 0.
struct RVector {
    std::vector<int> r;

    int t() const { return static_cast<int>(r.size()); }
    bool valid(int n) const;
    void require_valid(int n) const; // throws ParseError with the reason

    std::string str() const;                      // "1,3"; "" for t=0
    static RVector parse(std::string_view text);  // inverse of str()

    bool operator==(const RVector&) const = default;
    auto operator<=>(const RVector&) const = default;
};

/// All r-vectors with t parts in lexicographic order; and all of them for
/// t = 0..n, concatenated.
std::vector<RVector> all_r_vectors(int n, int t);
std::vector<RVector> all_r_vectors(int n);

/// w_r = [union over a in [1,t] of [1, r_a - 1] x {a}] united with
/// [1,n] x [t+1, n]: truncated columns on the first t columns, full
/// columns after. Always a diagram.
Diagram build_w_r(int n, const RVector& r);

/// True iff (i,a) in w forces (i,b) in w for every b in [a,n] (each row
/// is a suffix of column indices). Holds for every w_r.
bool column_convexity_holds(const Diagram& w);

/// Row-extension vector: gamma_k counts the prefix cells added to row k.
struct GammaVector {
    std::vector<int> g;
    bool operator==(const GammaVector&) const = default;
    auto operator<=>(const GammaVector&) const = default;
    std::string str() const; // "0,1,0"
};

/// Box bound for gamma_k: the number of r_j strictly below k.
int gamma_bound(const RVector& r, int k);

/// All gamma vectors with gamma_k in [0, gamma_bound(r,k)], lexicographic.
std::vector<GammaVector> enumerate_Gamma(int n, const RVector& r);

/// w_{r,gamma} = w_r united with the row prefixes {k} x [1, gamma_k].
/// Throws GammaOutOfRangeError when gamma violates its box constraints.
Diagram build_w_r_gamma(int n, const RVector& r, const GammaVector& gamma);

/// Scans every diagram and keeps w iff the restored matrix has y = 0 on
/// all of w_r while y_{r_k,k} != 0 for each k. Sorted canonical order.
/// (Defined with the restoration code; n <= 4.)
std::vector<Diagram> surviving_diagrams(int n, const RVector& r);

} // namespace qmspec
