#include "qmspec/qminors.hpp"

#include <atomic>
#include <bit>
#include <mutex>
#include <thread>

#include "qmspec/restoration.hpp"

namespace qmspec {

namespace {

void validate_index(const TorusPresentation& p, const MinorIndex& idx) {
    auto check = [&](const std::vector<int>& v, const char* what) {
        if (v.empty()) throw ParseError(std::string("minor ") + what + " selection is empty");
        int prev = 0;
        for (int x : v) {
            if (x <= prev || x > p.n)
                throw ParseError(std::string("minor ") + what +
                                 " selection is not strictly increasing in [1," +
                                 std::to_string(p.n) + "]");
            prev = x;
        }
    };
    check(idx.rows, "row");
    check(idx.cols, "col");
    if (idx.rows.size() != idx.cols.size())
        throw ParseError("minor row/col selections differ in size");
}

struct DetWalker {
    const TorusPresentation& p;
    const QuantumMatrix& M;
    const MinorIndex& idx;
    int m;
    uint32_t used = 0;
    TorusElement result;

    void rec(int level, const TorusElement& acc, int inversions) {
        if (level == m) {
            // fold in (-q)^inv once per completed permutation
            QLaurent c = QLaurent::term((inversions % 2 == 0) ? 1 : -1, inversions);
            for (const auto& [mono, coeff] : acc.terms()) result.add_term(mono, c * coeff);
            return;
        }
        for (int c = 0; c < m; ++c) {
            if (used & (1u << c)) continue;
            const TorusElement& entry = M.at(idx.rows[level], idx.cols[c]);
            if (entry.is_zero()) continue;
            int added = std::popcount(used >> (c + 1)); // used columns above c
            used |= 1u << c;
            rec(level + 1, level == 0 ? entry : torus_mul(p, acc, entry),
                inversions + added);
            used &= ~(1u << c);
        }
    }
};

// Cheap certificate that a minor vanishes: some selected row (or column)
// is zero on the whole selection. Saves the DFS on sparse matrices.
bool trivially_zero(uint64_t zeros, int n, const MinorIndex& idx) {
    for (int i : idx.rows) {
        bool all = true;
        for (int a : idx.cols)
            if (!mask_contains(zeros, n, i, a)) {
                all = false;
                break;
            }
        if (all) return true;
    }
    for (int a : idx.cols) {
        bool all = true;
        for (int i : idx.rows)
            if (!mask_contains(zeros, n, i, a)) {
                all = false;
                break;
            }
        if (all) return true;
    }
    return false;
}

// Scans size-m minors in lexicographic (rows, cols) order; returns the
// first nonvanishing one, or nullopt when all vanish.
std::optional<MinorIndex> first_nonzero_minor(const TorusPresentation& p,
                                              const QuantumMatrix& M, int m) {
    const uint64_t zeros = zero_pattern(M);
    for (const RVector& rows : all_r_vectors(p.n, m)) {
        for (const RVector& cols : all_r_vectors(p.n, m)) {
            MinorIndex idx{rows.r, cols.r};
            if (trivially_zero(zeros, p.n, idx)) continue;
            if (!det_q(p, M, idx).is_zero()) return idx;
        }
    }
    return std::nullopt;
}

} // namespace

TorusElement det_q(const TorusPresentation& p, const QuantumMatrix& M,
                   const MinorIndex& idx) {
    validate_index(p, idx);
    DetWalker walker{p, M, idx, static_cast<int>(idx.rows.size())};
    walker.rec(0, p.one(), 0);
    return walker.result;
}

bool all_minors_vanish(const TorusPresentation& p, const QuantumMatrix& M, int m) {
    return !first_nonzero_minor(p, M, m).has_value();
}

std::string ClassificationRecord::to_json() const {
    std::string s = "{\"diagram\":\"" + diagram.str() + "\",\"rank\":" +
                    std::to_string(rank) + ",\"witness\":";
    if (witness) {
        auto list = [](const std::vector<int>& v) {
            std::string s = "[";
            for (std::size_t i = 0; i < v.size(); ++i) {
                if (i) s += ',';
                s += std::to_string(v[i]);
            }
            return s + "]";
        };
        s += "{\"rows\":" + list(witness->rows) + ",\"cols\":" + list(witness->cols) + "}";
    } else {
        s += "null";
    }
    s += std::string(",\"gap_free\":") + (gap_free ? "true" : "false") + "}";
    return s;
}

ClassificationRecord classify_rank(const TorusPresentation& p, const Diagram& w) {
    if (w.n() != p.n)
        throw NotADiagramError("diagram size does not match the presentation");
    const QuantumMatrix M = restore(p.n, w);

    int rank = 0;
    std::optional<MinorIndex> witness;
    for (int m = p.n; m >= 1; --m) {
        if (auto hit = first_nonzero_minor(p, M, m)) {
            rank = m;
            witness = std::move(hit);
            break;
        }
        // this size vanished completely; keep descending
    }
    // Below the rank, vanishing must not reappear: some m x m minor is
    // nonzero for every m <= rank, otherwise the size classes would not
    // partition the diagrams.
    for (int m = rank - 1; m >= 1; --m) {
        if (!first_nonzero_minor(p, M, m))
            throw GapViolationError("diagram " + w.str() + " has rank " +
                                    std::to_string(rank) + " but every " +
                                    std::to_string(m) + "x" + std::to_string(m) +
                                    " minor vanishes");
    }
    return {w, rank, std::move(witness), true};
}

void classify_all(int n, int jobs,
                  const std::function<void(const ClassificationRecord&)>& sink) {
    const std::vector<Diagram> diagrams = all_diagrams(n);
    const TorusPresentation p{n};
    std::vector<std::optional<ClassificationRecord>> records(diagrams.size());

    if (jobs <= 1) {
        for (std::size_t i = 0; i < diagrams.size(); ++i)
            records[i] = classify_rank(p, diagrams[i]);
    } else {
        std::atomic<std::size_t> next{0};
        std::exception_ptr failure;
        std::mutex failure_mutex;
        auto worker = [&] {
            try {
                while (true) {
                    std::size_t i = next.fetch_add(1);
                    if (i >= diagrams.size()) return;
                    records[i] = classify_rank(p, diagrams[i]);
                }
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                next.store(diagrams.size()); // drain remaining work
            }
        };
        std::vector<std::thread> pool;
        for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
        if (failure) std::rethrow_exception(failure);
    }

    for (const auto& rec : records) sink(*rec);
}

std::map<int, long long> rank_census(int n, int jobs) {
    std::map<int, long long> counts;
    classify_all(n, jobs, [&](const ClassificationRecord& rec) { ++counts[rec.rank]; });
    return counts;
}

} // namespace qmspec
