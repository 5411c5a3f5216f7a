#include "qmspec/diagrams.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <sstream>

namespace qmspec {

bool bitstring_less(uint64_t a, uint64_t b) {
    uint64_t x = a ^ b;
    if (x == 0) return false;
    return (a & (x & -x)) == 0; // 0 at the lowest differing cell wins
}

namespace {

// Row sweep shared by is_diagram and first_uncoverable_cell. Column mask
// `full` tracks which columns are full in all rows seen so far; a row is
// admissible iff it is an all-ones prefix plus extra cells confined to
// still-full columns.
template <typename OnBadCell>
bool sweep_rows(int n, uint64_t cells, OnBadCell&& on_bad) {
    const uint32_t all = (n == 32) ? ~0u : ((1u << n) - 1);
    uint32_t full = all;
    for (int i = 1; i <= n; ++i) {
        uint32_t row = static_cast<uint32_t>((cells >> ((i - 1) * n)) & all);
        int k = std::countr_one(row); // maximal all-ones prefix
        uint32_t extras = row & ~((k >= 32) ? ~0u : ((1u << k) - 1));
        uint32_t bad = extras & ~full;
        if (bad != 0) {
            on_bad(i, std::countr_zero(bad) + 1);
            return false;
        }
        full &= row;
    }
    return true;
}

} // namespace

bool is_diagram(int n, uint64_t cells) {
    return sweep_rows(n, cells, [](int, int) {});
}

std::optional<Position> first_uncoverable_cell(int n, uint64_t cells) {
    std::optional<Position> hit;
    sweep_rows(n, cells, [&](int i, int a) { hit = Position{i, a}; });
    return hit;
}

Diagram::Diagram(int n, uint64_t cells) : n_(n), cells_(cells) {
    if (n < 1 || n > 8)
        throw NotADiagramError("grid size " + std::to_string(n) + " out of range [1,8]");
    if (n < 8 && (cells >> (n * n)) != 0)
        throw NotADiagramError("cell mask has bits outside the grid");
    if (auto bad = first_uncoverable_cell(n, cells)) {
        throw NotADiagramError("cell (" + std::to_string(bad->row) + "," +
                               std::to_string(bad->col) +
                               ") is neither row- nor column-coverable");
    }
}

int Diagram::cell_count() const { return std::popcount(cells_); }

std::string Diagram::str() const {
    std::string s;
    s.reserve(n_ * n_ + n_ - 1);
    for (int i = 1; i <= n_; ++i) {
        if (i > 1) s += '/';
        for (int a = 1; a <= n_; ++a) s += contains(i, a) ? '1' : '0';
    }
    return s;
}

Diagram Diagram::parse(std::string_view text) {
    std::vector<std::string_view> rows;
    std::size_t pos = 0;
    while (true) {
        std::size_t slash = text.find('/', pos);
        rows.push_back(text.substr(pos, slash == std::string_view::npos
                                            ? std::string_view::npos
                                            : slash - pos));
        if (slash == std::string_view::npos) break;
        pos = slash + 1;
    }
    int n = static_cast<int>(rows.size());
    if (n < 1 || n > 8) throw ParseError("diagram must have 1..8 rows");
    uint64_t cells = 0;
    for (int i = 1; i <= n; ++i) {
        if (static_cast<int>(rows[i - 1].size()) != n)
            throw ParseError("diagram row " + std::to_string(i) + " has length " +
                             std::to_string(rows[i - 1].size()) + ", expected " +
                             std::to_string(n));
        for (int a = 1; a <= n; ++a) {
            char c = rows[i - 1][a - 1];
            if (c != '0' && c != '1')
                throw ParseError(std::string("diagram characters must be 0/1, got '") + c + "'");
            if (c == '1') cells |= uint64_t{1} << cell_bit(n, i, a);
        }
    }
    return Diagram(n, cells); // membership check happens here
}

bool Diagram::operator<(const Diagram& rhs) const {
    if (n_ != rhs.n_) return n_ < rhs.n_;
    return bitstring_less(cells_, rhs.cells_);
}

namespace {

// Valid row patterns below a given full-column mask: an all-ones prefix
// [1..k] (bit k clear) plus any subset of full columns >= k+2. Patterns
// are returned in bit-string order; the set depends only on `full`, so
// memoize per mask.
std::vector<uint32_t> row_patterns(int n, uint32_t full) {
    std::vector<uint32_t> out;
    for (int k = 0; k <= n; ++k) {
        uint32_t prefix = (1u << k) - 1;
        if (k == n) {
            out.push_back(prefix);
            break;
        }
        uint32_t pool = full & ~((1u << (k + 1)) - 1); // columns >= k+2
        uint32_t s = 0;
        while (true) { // all submasks of pool
            out.push_back(prefix | s);
            if (s == pool) break;
            s = (s - pool) & pool;
        }
    }
    std::sort(out.begin(), out.end(),
              [](uint32_t a, uint32_t b) { return bitstring_less(a, b); });
    return out;
}

struct Enumerator {
    int n;
    std::function<void(uint64_t)> emit;
    std::map<uint32_t, std::vector<uint32_t>> memo;

    const std::vector<uint32_t>& patterns(uint32_t full) {
        auto it = memo.find(full);
        if (it == memo.end()) it = memo.emplace(full, row_patterns(n, full)).first;
        return it->second;
    }

    void dfs(int row, uint64_t acc, uint32_t full) {
        if (row > n) {
            emit(acc);
            return;
        }
        for (uint32_t p : patterns(full))
            dfs(row + 1, acc | (uint64_t{p} << ((row - 1) * n)), full & p);
    }
};

} // namespace

void enumerate_W(int n, const std::function<void(const Diagram&)>& fn) {
    if (n < 1 || n > 6)
        throw SizeTooLargeError("diagram enumeration supports n in [1,6], got " +
                                std::to_string(n));
    Enumerator e{n, [&](uint64_t acc) { fn(Diagram(n, acc, Diagram::Unchecked{})); }, {}};
    e.dfs(1, 0, (1u << n) - 1);
}

std::vector<Diagram> all_diagrams(int n) {
    std::vector<Diagram> out;
    enumerate_W(n, [&](const Diagram& w) { out.push_back(w); });
    return out;
}

bool RVector::valid(int n) const {
    int prev = 0;
    for (int v : r) {
        if (v <= prev || v > n) return false;
        prev = v;
    }
    return true;
}

void RVector::require_valid(int n) const {
    if (!valid(n))
        throw ParseError("r-vector (" + str() + ") is not strictly increasing in [1," +
                         std::to_string(n) + "]");
}

std::string RVector::str() const {
    std::string s;
    for (std::size_t i = 0; i < r.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(r[i]);
    }
    return s;
}

RVector RVector::parse(std::string_view text) {
    RVector out;
    if (text.empty()) return out; // t = 0
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t comma = text.find(',', pos);
        std::string part(text.substr(pos, comma == std::string_view::npos
                                              ? std::string_view::npos
                                              : comma - pos));
        try {
            std::size_t used = 0;
            int v = std::stoi(part, &used);
            if (used != part.size()) throw ParseError("");
            out.r.push_back(v);
        } catch (const std::exception&) {
            throw ParseError("bad r-vector component \"" + part + "\"");
        }
        if (comma == std::string_view::npos) break;
        pos = comma + 1;
    }
    return out;
}

std::vector<RVector> all_r_vectors(int n, int t) {
    std::vector<RVector> out;
    if (t == 0) {
        out.push_back({});
        return out;
    }
    if (t < 0 || t > n) return out;
    std::vector<int> c(t);
    for (int i = 0; i < t; ++i) c[i] = i + 1;
    while (true) {
        out.push_back({c});
        int i = t - 1;
        while (i >= 0 && c[i] == n - (t - 1 - i)) --i;
        if (i < 0) break;
        ++c[i];
        for (int j = i + 1; j < t; ++j) c[j] = c[j - 1] + 1;
    }
    return out;
}

std::vector<RVector> all_r_vectors(int n) {
    std::vector<RVector> out;
    for (int t = 0; t <= n; ++t) {
        auto part = all_r_vectors(n, t);
        out.insert(out.end(), part.begin(), part.end());
    }
    return out;
}

Diagram build_w_r(int n, const RVector& r) {
    r.require_valid(n);
    int t = r.t();
    uint64_t cells = 0;
    for (int a = 1; a <= t; ++a)
        for (int i = 1; i < r.r[a - 1]; ++i) cells |= uint64_t{1} << cell_bit(n, i, a);
    for (int a = t + 1; a <= n; ++a)
        for (int i = 1; i <= n; ++i) cells |= uint64_t{1} << cell_bit(n, i, a);
    return Diagram(n, cells);
}

bool column_convexity_holds(const Diagram& w) {
    for (int i = 1; i <= w.n(); ++i) {
        bool seen = false;
        for (int a = 1; a <= w.n(); ++a) {
            if (w.contains(i, a))
                seen = true;
            else if (seen)
                return false;
        }
    }
    return true;
}

std::string GammaVector::str() const {
    std::string s;
    for (std::size_t i = 0; i < g.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(g[i]);
    }
    return s;
}

int gamma_bound(const RVector& r, int k) {
    int l = 0;
    for (int v : r.r)
        if (v < k) ++l;
    return l;
}

std::vector<GammaVector> enumerate_Gamma(int n, const RVector& r) {
    r.require_valid(n);
    std::vector<int> bound(n);
    for (int k = 1; k <= n; ++k) bound[k - 1] = gamma_bound(r, k);
    std::vector<GammaVector> out;
    std::vector<int> g(n, 0);
    while (true) {
        out.push_back({g});
        int i = n - 1;
        while (i >= 0 && g[i] == bound[i]) g[i--] = 0;
        if (i < 0) break;
        ++g[i];
    }
    return out;
}

Diagram build_w_r_gamma(int n, const RVector& r, const GammaVector& gamma) {
    r.require_valid(n);
    if (static_cast<int>(gamma.g.size()) != n)
        throw GammaOutOfRangeError("gamma has " + std::to_string(gamma.g.size()) +
                                   " entries, expected " + std::to_string(n));
    for (int k = 1; k <= n; ++k) {
        int bound = gamma_bound(r, k);
        if (gamma.g[k - 1] < 0 || gamma.g[k - 1] > bound)
            throw GammaOutOfRangeError("gamma_" + std::to_string(k) + " = " +
                                       std::to_string(gamma.g[k - 1]) +
                                       " outside [0," + std::to_string(bound) + "]");
    }
    uint64_t cells = build_w_r(n, r).cells();
    for (int k = 1; k <= n; ++k)
        for (int a = 1; a <= gamma.g[k - 1]; ++a) cells |= uint64_t{1} << cell_bit(n, k, a);
    return Diagram(n, cells);
}

} // namespace qmspec
