#include "qmspec/qtorus.hpp"

#include <sstream>

namespace qmspec {

void TorusElement::add_term(const Monomial& m, const QLaurent& c) {
    if (c.is_zero()) return;
    auto it = terms_.find(m);
    if (it == terms_.end()) {
        terms_.emplace(m, c);
    } else {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

TorusElement& TorusElement::operator+=(const TorusElement& rhs) {
    for (const auto& [m, c] : rhs.terms_) add_term(m, c);
    return *this;
}

TorusElement& TorusElement::operator-=(const TorusElement& rhs) {
    for (const auto& [m, c] : rhs.terms_) add_term(m, -c);
    return *this;
}

TorusElement TorusElement::operator-() const {
    TorusElement r;
    for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
    return r;
}

long TorusPresentation::twist(const Monomial& e, const Monomial& f) const {
    // For v = (i,a): the row-major predecessors of v sharing its row are
    // (i,1..a-1), those sharing its column are (1..i-1,a). Accumulate
    // -e_v * (row prefix of f + column prefix of f) in one sweep.
    long c = 0;
    std::vector<long> col_prefix(n, 0);
    for (int i = 0; i < n; ++i) {
        long row_prefix = 0;
        for (int a = 0; a < n; ++a) {
            int idx = i * n + a;
            if (e.e[idx] != 0) c -= e.e[idx] * (row_prefix + col_prefix[a]);
            row_prefix += f.e[idx];
            col_prefix[a] += f.e[idx];
        }
    }
    return c;
}

TorusElement TorusPresentation::generator(Position p) const {
    Monomial m = identity_monomial();
    m.e[index(p)] = 1;
    return TorusElement::term(std::move(m), QLaurent(1));
}

TorusElement torus_add(const TorusElement& a, const TorusElement& b) { return a + b; }

TorusElement torus_mul(const TorusPresentation& p, const TorusElement& a,
                       const TorusElement& b) {
    TorusElement r;
    Monomial sum;
    sum.e.resize(p.size());
    for (const auto& [e, ca] : a.terms()) {
        for (const auto& [f, cb] : b.terms()) {
            for (int i = 0; i < p.size(); ++i) sum.e[i] = e.e[i] + f.e[i];
            QLaurent c = ca * cb;
            c.shift(static_cast<int>(p.twist(e, f)));
            r.add_term(sum, c);
        }
    }
    return r;
}

TorusElement scale(const QLaurent& c, const TorusElement& a) {
    TorusElement r;
    for (const auto& [m, cm] : a.terms()) r.add_term(m, c * cm);
    return r;
}

TorusElement torus_invert_monomial(const TorusPresentation& p, const TorusElement& a) {
    if (a.term_count() != 1)
        throw NotInvertibleError("inverse requires a single-term element, got " +
                                 std::to_string(a.term_count()) + " terms");
    const auto& [e, c] = *a.terms().begin();
    if (!c.is_unit())
        throw NotInvertibleError("coefficient is not a unit: " + c.str());
    // (c T^e)^-1 = c^-1 q^twist(e,e) T^-e, since T^e T^-e = q^-twist(e,e).
    Monomial neg = e;
    for (auto& v : neg.e) v = -v;
    QLaurent d = c.inverted_unit();
    d.shift(static_cast<int>(p.twist(e, e)));
    return TorusElement::term(std::move(neg), std::move(d));
}

std::string to_string(const TorusPresentation& p, const TorusElement& x) {
    if (x.is_zero()) return "0";
    std::ostringstream out;
    bool first = true;
    for (auto it = x.terms().rbegin(); it != x.terms().rend(); ++it) {
        const auto& [m, c] = *it;
        // Split the coefficient into a printable sign and magnitude when it
        // is a single term; multi-term coefficients get parentheses.
        bool negative = false;
        std::string coeff_body;
        if (c.term_count() == 1) {
            const auto& [exp, num] = *c.terms().begin();
            negative = num < 0;
            coeff_body = QLaurent::term(abs(num), exp).str();
        } else {
            coeff_body = "(" + c.str() + ")";
        }
        if (first) {
            if (negative) out << '-';
            first = false;
        } else {
            out << (negative ? " - " : " + ");
        }
        std::string factors;
        for (int idx = 0; idx < p.size(); ++idx) {
            if (m.e[idx] == 0) continue;
            Position pos = p.position(idx);
            if (!factors.empty()) factors += '*';
            factors += "T[" + std::to_string(pos.row) + ',' + std::to_string(pos.col) + ']';
            if (m.e[idx] != 1) factors += '^' + std::to_string(m.e[idx]);
        }
        if (factors.empty()) {
            out << coeff_body;
        } else if (coeff_body == "1") {
            out << factors;
        } else {
            out << coeff_body << '*' << factors;
        }
    }
    return out.str();
}

const char* relation_name(QRelation r) {
    switch (r) {
        case QRelation::yx: return "yx";
        case QRelation::zx: return "zx";
        case QRelation::zy: return "zy";
        case QRelation::ty: return "ty";
        case QRelation::tz: return "tz";
        case QRelation::tx: return "tx";
    }
    return "?";
}

namespace {

// Residual of one 2x2 submatrix; pushes a violation per nonzero residual.
void check_submatrix(const TorusPresentation& p, const QuantumMatrix& M, int i, int j,
                     int a, int b, bool q_commutator_case,
                     std::vector<RelationViolation>& out) {
    const TorusElement& x = M.at(i, a);
    const TorusElement& y = M.at(i, b);
    const TorusElement& z = M.at(j, a);
    const TorusElement& t = M.at(j, b);
    const QLaurent qinv = QLaurent::q_power(-1);

    auto push = [&](QRelation rel) { out.push_back({i, j, a, b, rel}); };
    auto check_qcomm = [&](const TorusElement& u, const TorusElement& v, QRelation rel) {
        // v u = q^-1 u v
        if (!(torus_mul(p, v, u) - scale(qinv, torus_mul(p, u, v))).is_zero()) push(rel);
    };

    check_qcomm(x, y, QRelation::yx);
    check_qcomm(x, z, QRelation::zx);
    if (!(torus_mul(p, z, y) - torus_mul(p, y, z)).is_zero()) push(QRelation::zy);
    check_qcomm(y, t, QRelation::ty);
    check_qcomm(z, t, QRelation::tz);

    TorusElement diag = torus_mul(p, t, x) - torus_mul(p, x, t);
    if (q_commutator_case)
        diag += scale(QLaurent::q_minus_q_inverse(), torus_mul(p, y, z));
    if (!diag.is_zero()) push(QRelation::tx);
}

} // namespace

RelationReport check_jbeta_quantum(const TorusPresentation& p, const QuantumMatrix& M,
                                   int jb_row, int jb_col) {
    RelationReport report;
    for (int i = 1; i <= p.n; ++i)
        for (int j = i + 1; j <= p.n; ++j)
            for (int a = 1; a <= p.n; ++a)
                for (int b = a + 1; b <= p.n; ++b) {
                    // v = (j,b) is the bottom-right entry; the q-commutator
                    // form applies exactly when v < (jb_row, jb_col) lex.
                    bool qcomm = j < jb_row || (j == jb_row && b < jb_col);
                    check_submatrix(p, M, i, j, a, b, qcomm, report.violations);
                }
    return report;
}

RelationReport check_q_quantum(const TorusPresentation& p, const QuantumMatrix& M) {
    return check_jbeta_quantum(p, M, p.n, p.n + 1);
}

} // namespace qmspec
