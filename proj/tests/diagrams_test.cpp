#include <doctest.h>

#include <cstdint>
#include <map>
#include <set>
#include <vector>

#include "qmspec/diagrams.hpp"

using namespace qmspec;

namespace {

// ============================================================================
// Oracle: literal "union of truncated rows and columns" membership. A set S
// is achievable iff the union of all row pieces [i]x[1,k] and column pieces
// [1,k]x[a] contained in S gives back S. Independent of the prefix/full-
// column sweep under test.
// ============================================================================

std::vector<uint64_t> cover_pieces(int n) {
    std::vector<uint64_t> pieces;
    for (int i = 1; i <= n; ++i) {
        uint64_t acc = 0;
        for (int k = 1; k <= n; ++k) {
            acc |= uint64_t{1} << cell_bit(n, i, k);
            pieces.push_back(acc);
        }
    }
    for (int a = 1; a <= n; ++a) {
        uint64_t acc = 0;
        for (int k = 1; k <= n; ++k) {
            acc |= uint64_t{1} << cell_bit(n, k, a);
            pieces.push_back(acc);
        }
    }
    return pieces;
}

bool oracle_is_diagram(int n, uint64_t cells) {
    uint64_t covered = 0;
    for (uint64_t piece : cover_pieces(n))
        if ((piece & ~cells) == 0) covered |= piece;
    return covered == cells;
}

uint64_t mask_of(int n, std::initializer_list<Position> cells) {
    uint64_t m = 0;
    for (Position p : cells) m |= uint64_t{1} << cell_bit(n, p.row, p.col);
    return m;
}

} // namespace

TEST_CASE("diagrams: bit-string order") {
    // '0' < '1' on the first differing cell, row-major — not integer order
    CHECK(bitstring_less(0b0, 0b1));
    CHECK(bitstring_less(0b10, 0b01)); // "01" < "10" as strings
    CHECK_FALSE(bitstring_less(0b01, 0b10));
    CHECK_FALSE(bitstring_less(5, 5));
    CHECK(bitstring_less(0b110, 0b101)); // "011" < "101"
}

TEST_CASE("diagrams: membership agrees with the cover oracle") {
    for (int n = 1; n <= 4; ++n) {
        long long count = 0;
        for (uint64_t cells = 0; cells < (uint64_t{1} << (n * n)); ++cells) {
            bool expected = oracle_is_diagram(n, cells);
            CHECK(is_diagram(n, cells) == expected);
            CHECK(first_uncoverable_cell(n, cells).has_value() == !expected);
            if (expected) ++count;
        }
        const long long totals[] = {0, 2, 14, 230, 6902};
        CHECK(count == totals[n]);
    }
}

TEST_CASE("diagrams: membership hand cases") {
    CHECK(is_diagram(2, 0));                                     // empty set
    CHECK(is_diagram(2, mask_of(2, {{1, 1}, {1, 2}, {2, 1}, {2, 2}})));
    CHECK_FALSE(is_diagram(2, mask_of(2, {{2, 2}})));            // isolated corner
    CHECK(is_diagram(2, mask_of(2, {{1, 2}, {2, 2}})));          // full column
    CHECK(is_diagram(2, mask_of(2, {{1, 2}})));                  // column prefix
    CHECK(is_diagram(2, mask_of(2, {{1, 1}, {2, 2}})) == false); // (2,2) uncovered
    CHECK(is_diagram(3, mask_of(3, {{1, 1}, {1, 2}, {2, 1}})));
    CHECK(first_uncoverable_cell(2, mask_of(2, {{2, 2}})) == Position{2, 2});
    CHECK_FALSE(first_uncoverable_cell(3, 0).has_value());
}

TEST_CASE("diagrams: validating constructor") {
    CHECK_NOTHROW(Diagram(2, 0));
    CHECK_THROWS_AS(Diagram(2, mask_of(2, {{2, 2}})), NotADiagramError);
    CHECK_THROWS_AS(Diagram(0, 0), NotADiagramError);
    CHECK_THROWS_AS(Diagram(9, 0), NotADiagramError);
    CHECK_THROWS_AS(Diagram(2, uint64_t{1} << 4), NotADiagramError); // stray bit

    Diagram w(3, mask_of(3, {{1, 2}, {2, 2}, {1, 3}, {2, 3}, {3, 3}}));
    CHECK(w.n() == 3);
    CHECK(w.cell_count() == 5);
    CHECK(w.contains(2, 2));
    CHECK_FALSE(w.contains(3, 1));
}

TEST_CASE("diagrams: enumeration counts, order, and membership") {
    const long long totals[] = {0, 2, 14, 230, 6902, 329462};
    for (int n = 1; n <= 4; ++n) {
        std::vector<Diagram> all = all_diagrams(n);
        CHECK(static_cast<long long>(all.size()) == totals[n]);
        for (std::size_t i = 0; i < all.size(); ++i) {
            CHECK(oracle_is_diagram(n, all[i].cells()));
            if (i > 0) CHECK(all[i - 1] < all[i]); // strictly increasing: sorted + unique
        }
        CHECK(all.front().cells() == 0);
        CHECK(all.back().cell_count() == n * n);
    }

    long long seen = 0;
    enumerate_W(5, [&](const Diagram&) { ++seen; });
    CHECK(seen == totals[5]);

    CHECK_THROWS_AS(enumerate_W(0, [](const Diagram&) {}), SizeTooLargeError);
    CHECK_THROWS_AS(enumerate_W(7, [](const Diagram&) {}), SizeTooLargeError);
}

TEST_CASE("diagrams: text round trip") {
    CHECK(Diagram(1, 0).str() == "0");
    CHECK(Diagram(1, 1).str() == "1");
    CHECK(Diagram(3, mask_of(3, {{1, 2}, {2, 2}, {1, 3}, {2, 3}, {3, 3}})).str() == "011/011/001");
    CHECK(Diagram::parse("011/011/001").cells() ==
          mask_of(3, {{1, 2}, {2, 2}, {1, 3}, {2, 3}, {3, 3}}));

    for (int n = 1; n <= 3; ++n)
        for (const Diagram& w : all_diagrams(n)) {
            Diagram back = Diagram::parse(w.str());
            CHECK(back == w);
        }

    CHECK_THROWS_AS((void)Diagram::parse(""), ParseError);
    CHECK_THROWS_AS((void)Diagram::parse("01/0"), ParseError);   // ragged
    CHECK_THROWS_AS((void)Diagram::parse("0a/00"), ParseError);  // bad character
    CHECK_THROWS_AS((void)Diagram::parse("011/011"), ParseError); // not square
    CHECK_THROWS_AS((void)Diagram::parse("00/01"), NotADiagramError);

    // the rejection message names the offending cell
    try {
        (void)Diagram::parse("00/01");
        CHECK(false);
    } catch (const NotADiagramError& e) {
        CHECK(std::string(e.what()).find("(2,2)") != std::string::npos);
    }
}

TEST_CASE("diagrams: r-vectors") {
    CHECK(RVector{}.t() == 0);
    CHECK(RVector{{1, 3}}.t() == 2);
    CHECK(RVector{{1, 3}}.valid(3));
    CHECK_FALSE(RVector{{1, 3}}.valid(2));  // exceeds n
    CHECK_FALSE(RVector{{3, 1}}.valid(3));  // not increasing
    CHECK_FALSE(RVector{{1, 1}}.valid(3));  // not strict
    CHECK_FALSE(RVector{{0, 2}}.valid(3));  // below 1
    CHECK_THROWS_AS((RVector{{3, 1}}.require_valid(3)), ParseError);

    CHECK(RVector{{1, 3}}.str() == "1,3");
    CHECK(RVector{}.str() == "");
    CHECK(RVector::parse("1,3") == RVector{{1, 3}});
    CHECK(RVector::parse("") == RVector{});
    CHECK_THROWS_AS((void)RVector::parse("1,,3"), ParseError);
    CHECK_THROWS_AS((void)RVector::parse("a"), ParseError);
    CHECK_THROWS_AS((void)RVector::parse("1,3,"), ParseError);

    CHECK(all_r_vectors(3, 0) == std::vector<RVector>{RVector{}});
    CHECK(all_r_vectors(3, 2) ==
          std::vector<RVector>{RVector{{1, 2}}, RVector{{1, 3}}, RVector{{2, 3}}});
    CHECK(all_r_vectors(4).size() == 16); // 2^n over all t
    for (int n = 1; n <= 5; ++n)
        for (int t = 0; t <= n; ++t)
            for (const RVector& r : all_r_vectors(n, t)) {
                CHECK(r.t() == t);
                CHECK(r.valid(n));
            }
}

TEST_CASE("diagrams: the w_r grids") {
    CHECK(build_w_r(3, RVector{{1, 3}}).str() == "011/011/001");
    CHECK(build_w_r(3, RVector{}).str() == "111/111/111");       // t=0: full grid
    CHECK(build_w_r(3, RVector{{1, 2, 3}}).str() == "011/001/000"); // staircase
    CHECK(build_w_r(2, RVector{{1, 2}}).str() == "01/00");
    CHECK(build_w_r(2, RVector{{2}}).str() == "11/01");

    CHECK_THROWS_AS((void)build_w_r(2, RVector{{1, 3}}), ParseError);

    for (int n = 1; n <= 4; ++n)
        for (const RVector& r : all_r_vectors(n)) {
            Diagram w = build_w_r(n, r); // validating constructor: always in W
            CHECK(column_convexity_holds(w));
            // the corner cells (r_k, k) are never inside w_r
            for (int k = 1; k <= r.t(); ++k) CHECK_FALSE(w.contains(r.r[k - 1], k));
            // columns past t are full
            for (int a = r.t() + 1; a <= n; ++a)
                for (int i = 1; i <= n; ++i) CHECK(w.contains(i, a));
        }
}

TEST_CASE("diagrams: row suffix closure") {
    CHECK(column_convexity_holds(Diagram::parse("111/111/111")));
    CHECK(column_convexity_holds(Diagram::parse("000/000/000")));
    CHECK(column_convexity_holds(Diagram::parse("011/001/000")));
    CHECK_FALSE(column_convexity_holds(Diagram::parse("010/010/000")));
    CHECK_FALSE(column_convexity_holds(Diagram::parse("110/000/000")));
}

TEST_CASE("diagrams: gamma boxes") {
    RVector r{{1, 3}};
    CHECK(gamma_bound(r, 1) == 0);
    CHECK(gamma_bound(r, 2) == 1);
    CHECK(gamma_bound(r, 3) == 1);
    CHECK(gamma_bound(RVector{}, 3) == 0);

    std::vector<GammaVector> g = enumerate_Gamma(3, r);
    CHECK(g == std::vector<GammaVector>{
                   {{0, 0, 0}}, {{0, 0, 1}}, {{0, 1, 0}}, {{0, 1, 1}}});
    CHECK(enumerate_Gamma(3, RVector{}) == std::vector<GammaVector>{{{0, 0, 0}}});
}

TEST_CASE("diagrams: gamma extensions of w_r") {
    RVector r{{1, 3}};
    CHECK(build_w_r_gamma(3, r, GammaVector{{0, 0, 0}}).str() == "011/011/001");
    CHECK(build_w_r_gamma(3, r, GammaVector{{0, 1, 0}}).str() == "011/111/001");
    CHECK(build_w_r_gamma(3, r, GammaVector{{0, 0, 1}}).str() == "011/011/101");
    CHECK(build_w_r_gamma(3, r, GammaVector{{0, 1, 1}}).str() == "011/111/101");

    CHECK_THROWS_AS((void)build_w_r_gamma(3, r, GammaVector{{1, 0, 0}}), GammaOutOfRangeError);
    CHECK_THROWS_AS((void)build_w_r_gamma(3, r, GammaVector{{0, 2, 0}}), GammaOutOfRangeError);
    CHECK_THROWS_AS((void)build_w_r_gamma(3, r, GammaVector{{0, 0}}), GammaOutOfRangeError);

    // every member contains w_r and avoids the corners; the map
    // (r, gamma) -> diagram is injective across the entire family
    for (int n = 1; n <= 4; ++n) {
        std::set<uint64_t> seen;
        for (const RVector& r2 : all_r_vectors(n)) {
            uint64_t base = build_w_r(n, r2).cells();
            for (const GammaVector& gv : enumerate_Gamma(n, r2)) {
                Diagram w = build_w_r_gamma(n, r2, gv);
                CHECK((base & ~w.cells()) == 0);
                for (int k = 1; k <= r2.t(); ++k) CHECK_FALSE(w.contains(r2.r[k - 1], k));
                CHECK(seen.insert(w.cells()).second);
            }
        }
    }
}
