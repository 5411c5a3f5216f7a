#include "qmspec/restoration.hpp"

namespace qmspec {

std::vector<Position> standard_steps(int n) {
    std::vector<Position> steps;
    steps.reserve(n * n);
    for (int j = 1; j <= n; ++j)
        for (int b = 1; b <= n; ++b)
            if (!(j == 1 && b == 1)) steps.push_back({j, b});
    steps.push_back({n, n + 1});
    return steps;
}

Position step_successor(int n, Position r) {
    if (r.row == n && r.col == n) return {n, n + 1};
    if (r.col < n) return {r.row, r.col + 1};
    return {r.row + 1, 1};
}

QuantumMatrix initial_matrix(int n, const Diagram& w) {
    QuantumMatrix M(n);
    for (int i = 1; i <= n; ++i)
        for (int a = 1; a <= n; ++a)
            if (!w.contains(i, a)) M.at(i, a) = M.pres.generator({i, a});
    return M;
}

namespace {

// Inverts the pivot entry at step r, translating a bad shape into the
// loud structural failure it represents.
TorusElement checked_pivot_inverse(const QuantumMatrix& M, Position r) {
    try {
        return torus_invert_monomial(M.pres, M.at(r.row, r.col));
    } catch (const NotInvertibleError& e) {
        throw PivotNotMonomialError("pivot at step (" + std::to_string(r.row) + "," +
                                    std::to_string(r.col) + ") is not invertible: " +
                                    e.what());
    }
}

} // namespace

QuantumMatrix restore(int n, const Diagram& w, const StageObserver& observe) {
    if (w.n() != n)
        throw NotADiagramError("diagram size " + std::to_string(w.n()) +
                               " does not match n = " + std::to_string(n));
    const QuantumMatrix initial = initial_matrix(n, w);
    QuantumMatrix M = initial;
    if (observe) observe({1, 2}, M);
    for (Position r : standard_steps(n)) {
        if (r.col > n) break; // (n,n+1) is a label, not a step
        const int j = r.row, b = r.col;
        // The invariant holds for every ladder element, so check it even
        // when the step performs no update.
        if (!(M.at(j, b) == initial.at(j, b)))
            throw PivotNotMonomialError("pivot at step (" + std::to_string(j) + "," +
                                        std::to_string(b) +
                                        ") no longer equals its initial value: " +
                                        to_string(M.pres, M.at(j, b)));
        if (!M.at(j, b).is_zero() && j > 1 && b > 1) {
            TorusElement inv = checked_pivot_inverse(M, r);
            // Writes hit (i<j, a<b) only; reads come from column b, row j
            // and the pivot, all disjoint from the writes, so updating in
            // place is sound.
            for (int a = 1; a < b; ++a) {
                TorusElement tail = torus_mul(M.pres, inv, M.at(j, a));
                if (tail.is_zero()) continue;
                for (int i = 1; i < j; ++i)
                    M.at(i, a) += torus_mul(M.pres, M.at(i, b), tail);
            }
        }
        if (observe) observe(step_successor(n, r), M);
    }
    return M;
}

QuantumMatrix restore(int n, const Diagram& w) { return restore(n, w, nullptr); }

QuantumMatrix delete_derivations(const QuantumMatrix& M0) {
    QuantumMatrix M = M0;
    const int n = M.n();
    auto steps = standard_steps(n);
    for (auto it = steps.rbegin(); it != steps.rend(); ++it) {
        const Position r = *it;
        if (r.col > n) continue;
        const int j = r.row, b = r.col;
        if (M.at(j, b).is_zero() || j == 1 || b == 1) continue;
        TorusElement inv = checked_pivot_inverse(M, r);
        for (int a = 1; a < b; ++a) {
            TorusElement tail = torus_mul(M.pres, inv, M.at(j, a));
            if (tail.is_zero()) continue;
            for (int i = 1; i < j; ++i)
                M.at(i, a) -= torus_mul(M.pres, M.at(i, b), tail);
        }
    }
    return M;
}

uint64_t zero_pattern(const QuantumMatrix& M) {
    const int n = M.n();
    uint64_t mask = 0;
    for (int i = 1; i <= n; ++i)
        for (int a = 1; a <= n; ++a)
            if (M.at(i, a).is_zero()) mask |= uint64_t{1} << cell_bit(n, i, a);
    return mask;
}

std::vector<Diagram> surviving_diagrams(int n, const RVector& r) {
    if (n < 1 || n > 4)
        throw SizeTooLargeError("survival scan supports n in [1,4], got " +
                                std::to_string(n));
    r.require_valid(n);
    const uint64_t wr = build_w_r(n, r).cells();
    std::vector<Diagram> out;
    enumerate_W(n, [&](const Diagram& w) {
        uint64_t zeros = zero_pattern(restore(n, w));
        if ((wr & ~zeros) != 0) return; // y must vanish on all of w_r
        for (int k = 1; k <= r.t(); ++k)
            if (mask_contains(zeros, n, r.r[k - 1], k)) return; // y_{r_k,k} != 0
        out.push_back(w);
    });
    return out;
}

} // namespace qmspec
