#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "qmspec/errors.hpp"
#include "qmspec/qlaurent.hpp"

namespace qmspec {

/// 1-based grid coordinate of a generator T_{i,a}.
struct Position {
    int row = 1;
    int col = 1;
    auto operator<=>(const Position&) const = default;
};

/// Exponent vector of a normal-ordered monomial over the n^2 generators,
/// row-major, negative exponents allowed. The zero vector is the identity.
/// Ordering is lexicographic (the vector's default), which fixes both the
/// term order inside elements and the display order.
struct Monomial {
    std::vector<int32_t> e;
    auto operator<=>(const Monomial&) const = default;
    bool is_identity() const {
        for (int32_t v : e)
            if (v != 0) return false;
        return true;
    }
};

/// Quantum torus element: finite sum of coeff * T^e in normal form.
/// Invariant: no stored coefficient is zero.
class TorusElement {
public:
    using TermMap = std::map<Monomial, QLaurent>;

    TorusElement() = default; // zero

    static TorusElement term(Monomial m, QLaurent c) {
        TorusElement x;
        if (!c.is_zero()) x.terms_.emplace(std::move(m), std::move(c));
        return x;
    }

    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }
    const TermMap& terms() const { return terms_; }

    void add_term(const Monomial& m, const QLaurent& c);

    TorusElement& operator+=(const TorusElement& rhs);
    TorusElement& operator-=(const TorusElement& rhs);
    friend TorusElement operator+(TorusElement a, const TorusElement& b) { return a += b; }
    friend TorusElement operator-(TorusElement a, const TorusElement& b) { return a -= b; }
    TorusElement operator-() const;

    bool operator==(const TorusElement&) const = default;

private:
    TermMap terms_;
};

/// The commutation data of the quantum torus on n^2 generators: for u
/// strictly before v in row-major order, T_v T_u = q^lambda(u,v) T_u T_v,
/// with lambda = -1 when u,v share a row or a column and 0 otherwise.
struct TorusPresentation {
    int n = 1;

    int size() const { return n * n; }
    int index(Position p) const { return (p.row - 1) * n + (p.col - 1); }
    Position position(int idx) const { return {idx / n + 1, idx % n + 1}; }

    static int lambda(Position u, Position v) {
        return (u.row == v.row || u.col == v.col) ? -1 : 0;
    }

    // Reordering exponent: T^e * T^f = q^twist(e,f) * T^(e+f).
    // twist(e,f) = sum over row-major pairs u < v of lambda(u,v)*e_v*f_u;
    // only same-row/same-column pairs contribute, so it reduces to prefix
    // sums of f along the row and the column of each v.
    long twist(const Monomial& e, const Monomial& f) const;

    Monomial identity_monomial() const { return Monomial{std::vector<int32_t>(size(), 0)}; }
    TorusElement one() const { return TorusElement::term(identity_monomial(), QLaurent(1)); }
    TorusElement generator(Position p) const;
};

TorusElement torus_add(const TorusElement& a, const TorusElement& b);
TorusElement torus_mul(const TorusPresentation& p, const TorusElement& a, const TorusElement& b);
TorusElement scale(const QLaurent& c, const TorusElement& a);

/// Two-sided inverse of a single-term element with unit coefficient.
/// Throws NotInvertibleError on zero, multi-term, or non-unit coefficient.
TorusElement torus_invert_monomial(const TorusPresentation& p, const TorusElement& a);

/// "T[1,1] + q*T[1,2]*T[2,1]*T[2,2]^-1": terms in decreasing lex order on
/// exponent vectors, factors of each monomial in row-major order.
std::string to_string(const TorusPresentation& p, const TorusElement& x);

/// n x n array of torus elements over one shared presentation.
struct QuantumMatrix {
    TorusPresentation pres;
    std::vector<TorusElement> entries; // row-major

    explicit QuantumMatrix(int n = 1)
        : pres{n}, entries(static_cast<std::size_t>(n) * n) {}

    int n() const { return pres.n; }
    TorusElement& at(int i, int a) { return entries[static_cast<std::size_t>(i - 1) * n() + (a - 1)]; }
    const TorusElement& at(int i, int a) const {
        return entries[static_cast<std::size_t>(i - 1) * n() + (a - 1)];
    }
};

// The six relations of a 2x2 submatrix (x y; z t), named by their
// left-hand product: yx = q^-1 xy, zx = q^-1 xz, zy = yz, ty = q^-1 yt,
// tz = q^-1 zt, and the diagonal relation on tx.
enum class QRelation { yx, zx, zy, ty, tz, tx };

const char* relation_name(QRelation r);

struct RelationViolation {
    int i = 0, j = 0; // rows of the submatrix, i < j
    int a = 0, b = 0; // cols, a < b
    QRelation rel = QRelation::yx;
};

struct RelationReport {
    std::vector<RelationViolation> violations;
    bool ok() const { return violations.empty(); }
};

/// Checks every 2x2 submatrix against the five monomial relations plus
/// tx = xt - (q - q^-1) yz. Violations are reported, not thrown.
RelationReport check_q_quantum(const TorusPresentation& p, const QuantumMatrix& M);

/// Same, but the diagonal relation splits on the bottom-right position
/// v = (j,b) of the submatrix: tx = xt when v >= (jb_row, jb_col)
/// lexicographically, tx = xt - (q - q^-1) yz when v is smaller.
/// jb_col may be n+1; (n, n+1) makes this identical to check_q_quantum.
RelationReport check_jbeta_quantum(const TorusPresentation& p, const QuantumMatrix& M,
                                   int jb_row, int jb_col);

} // namespace qmspec
