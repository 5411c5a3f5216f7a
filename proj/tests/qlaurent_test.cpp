#include <doctest.h>

#include <random>
#include <string>
#include <vector>

#include "qmspec/qlaurent.hpp"

using qmspec::BigInt;
using qmspec::QLaurent;

namespace {

// ============================================================================
// Oracle: dense schoolbook arithmetic on coefficient vectors over a fixed
// exponent window. Independent of QLaurent's sparse-map representation.
// ============================================================================

constexpr int kLo = -64, kHi = 64;

struct DensePoly {
    std::vector<BigInt> c = std::vector<BigInt>(kHi - kLo + 1, BigInt(0));

    BigInt& at(int exp) { return c[static_cast<std::size_t>(exp - kLo)]; }
};

DensePoly dense_of(const QLaurent& x) {
    DensePoly d;
    for (const auto& [exp, coeff] : x.terms()) {
        REQUIRE(exp >= kLo);
        REQUIRE(exp <= kHi);
        d.at(exp) = coeff;
    }
    return d;
}

DensePoly dense_add(const DensePoly& a, const DensePoly& b) {
    DensePoly r;
    for (std::size_t i = 0; i < r.c.size(); ++i) r.c[i] = a.c[i] + b.c[i];
    return r;
}

DensePoly dense_mul(const DensePoly& a, const DensePoly& b) {
    DensePoly r;
    for (int i = kLo; i <= kHi; ++i)
        for (int j = kLo; j <= kHi; ++j) {
            if (a.c[static_cast<std::size_t>(i - kLo)] == 0) break;
            if (i + j < kLo || i + j > kHi) continue;
            r.c[static_cast<std::size_t>(i + j - kLo)] +=
                a.c[static_cast<std::size_t>(i - kLo)] * b.c[static_cast<std::size_t>(j - kLo)];
        }
    return r;
}

bool matches(const QLaurent& x, const DensePoly& d) {
    DensePoly got = dense_of(x);
    return got.c == d.c;
}

// Deterministic generator: raw engine draws only, no std distributions.
int draw(std::mt19937& rng, int lo, int hi) {
    return lo + static_cast<int>(rng() % static_cast<unsigned>(hi - lo + 1));
}

QLaurent random_poly(std::mt19937& rng) {
    QLaurent x;
    int terms = draw(rng, 0, 8);
    for (int i = 0; i < terms; ++i)
        x += QLaurent::term(BigInt(draw(rng, -9, 9)), draw(rng, -16, 16));
    return x;
}

} // namespace

TEST_CASE("qlaurent: constructors and basic predicates") {
    CHECK(QLaurent().is_zero());
    CHECK(QLaurent(0).is_zero());
    CHECK(QLaurent(1).is_one());
    CHECK(QLaurent(BigInt(1)).is_one());
    CHECK_FALSE(QLaurent(2).is_one());
    CHECK_FALSE(QLaurent(-1).is_one());
    CHECK(QLaurent::q_power(0).is_one());
    CHECK(QLaurent::term(BigInt(0), 5).is_zero());
    CHECK(QLaurent(7).term_count() == 1);
    CHECK(QLaurent::q_minus_q_inverse().term_count() == 2);
}

TEST_CASE("qlaurent: hand-checked arithmetic") {
    const QLaurent q = QLaurent::q_power(1);
    const QLaurent qi = QLaurent::q_power(-1);

    CHECK((q + (-q)).is_zero());
    CHECK((q + qi) + (q - qi) == QLaurent::term(BigInt(2), 1));
    CHECK(QLaurent() + QLaurent::term(BigInt(3), 2) == QLaurent::term(BigInt(3), 2));
    CHECK((q - qi) * (q + qi) == QLaurent::q_power(2) - QLaurent::q_power(-2));
    CHECK(QLaurent::term(BigInt(2), 1) * QLaurent::term(BigInt(3), -1) == QLaurent(6));
    CHECK((QLaurent::q_minus_q_inverse() * QLaurent()).is_zero());
    CHECK(q * qi == QLaurent(1));
    CHECK(-(q - qi) == qi - q);
}

TEST_CASE("qlaurent: canonical form drops cancelled terms") {
    QLaurent x = QLaurent::term(BigInt(5), 3);
    x -= QLaurent::term(BigInt(5), 3);
    CHECK(x.is_zero());
    CHECK(x.term_count() == 0);

    QLaurent y = (QLaurent::q_power(2) + QLaurent(1)) - QLaurent::q_power(2);
    CHECK(y.term_count() == 1);
    CHECK(y.is_one());
}

TEST_CASE("qlaurent: shift multiplies by a power of q") {
    QLaurent x = QLaurent(3) + QLaurent::q_power(2);
    QLaurent shifted = x;
    shifted.shift(-2);
    CHECK(shifted == x * QLaurent::q_power(-2));
    CHECK(shifted == QLaurent::term(BigInt(3), -2) + QLaurent(1));
    QLaurent z;
    CHECK(z.shift(7).is_zero());
}

TEST_CASE("qlaurent: unit detection and inversion") {
    CHECK(QLaurent::q_power(3).is_unit());
    CHECK(QLaurent::term(BigInt(-1), -1).is_unit());
    CHECK_FALSE(QLaurent(2).is_unit());
    CHECK_FALSE(QLaurent().is_unit());
    CHECK_FALSE((QLaurent::q_power(1) + QLaurent(1)).is_unit());

    CHECK(QLaurent::q_power(3).inverted_unit() == QLaurent::q_power(-3));
    CHECK(QLaurent::term(BigInt(-1), -1).inverted_unit() == QLaurent::term(BigInt(-1), 1));
    CHECK_THROWS_AS((void)(QLaurent::q_power(1) + QLaurent(1)).inverted_unit(),
                    qmspec::NotAUnitError);
    CHECK_THROWS_AS((void)QLaurent(2).inverted_unit(), qmspec::NotAUnitError);
    CHECK_THROWS_AS((void)QLaurent().inverted_unit(), qmspec::NotAUnitError);
}

TEST_CASE("qlaurent: units invert to two-sided identity") {
    std::mt19937 rng(2024'0601);
    for (int iter = 0; iter < 3000; ++iter) {
        QLaurent u = QLaurent::term(BigInt(rng() % 2 ? 1 : -1), draw(rng, -16, 16));
        CHECK(u.is_unit());
        CHECK(u * u.inverted_unit() == QLaurent(1));
        CHECK(u.inverted_unit() * u == QLaurent(1));
    }
}

TEST_CASE("qlaurent: ring axioms against the dense oracle") {
    std::mt19937 rng(1159'0927);
    for (int iter = 0; iter < 2000; ++iter) {
        QLaurent a = random_poly(rng), b = random_poly(rng), c = random_poly(rng);
        DensePoly da = dense_of(a), db = dense_of(b), dc = dense_of(c);

        CHECK(matches(a + b, dense_add(da, db)));
        CHECK(matches(a * b, dense_mul(da, db)));
        CHECK(a + b == b + a);
        CHECK(a * b == b * a);
        CHECK((a + b) + c == a + (b + c));
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK((a - b) + b == a);
        CHECK(matches(a, da)); // inputs unchanged by the operations
    }
}

TEST_CASE("qlaurent: rendering") {
    CHECK(QLaurent().str() == "0");
    CHECK(QLaurent(1).str() == "1");
    CHECK(QLaurent(-1).str() == "-1");
    CHECK(QLaurent(17).str() == "17");
    CHECK(QLaurent::q_power(1).str() == "q");
    CHECK(QLaurent::q_power(-1).str() == "q^-1");
    CHECK(QLaurent::q_power(2).str() == "q^2");
    CHECK((-QLaurent::q_power(1)).str() == "-q");
    CHECK(QLaurent::term(BigInt(2), 1).str() == "2*q");
    CHECK(QLaurent::term(BigInt(-3), -2).str() == "-3*q^-2");
    CHECK(QLaurent::q_minus_q_inverse().str() == "-q^-1 + q");

    // increasing exponent order, unit coefficients elided except on q^0
    QLaurent x = QLaurent::term(BigInt(3), -2) + QLaurent(1) - QLaurent::q_power(4);
    CHECK(x.str() == "3*q^-2 + 1 - q^4");
}

TEST_CASE("qlaurent: parsing") {
    CHECK(QLaurent::parse("0") == QLaurent());
    CHECK(QLaurent::parse("3*q^-2 + 1 - q^4") ==
          QLaurent::term(BigInt(3), -2) + QLaurent(1) - QLaurent::q_power(4));
    CHECK(QLaurent::parse("q") == QLaurent::q_power(1));
    CHECK(QLaurent::parse("-q^-1+q") == QLaurent::q_minus_q_inverse());
    CHECK(QLaurent::parse("  2*q  -  2*q ") == QLaurent());
    CHECK(QLaurent::parse("q + q") == QLaurent::term(BigInt(2), 1));

    CHECK_THROWS_AS((void)QLaurent::parse(""), qmspec::ParseError);
    CHECK_THROWS_AS((void)QLaurent::parse("q^"), qmspec::ParseError);
    CHECK_THROWS_AS((void)QLaurent::parse("3*"), qmspec::ParseError);
    CHECK_THROWS_AS((void)QLaurent::parse("+"), qmspec::ParseError);
    CHECK_THROWS_AS((void)QLaurent::parse("3**q"), qmspec::ParseError);
    CHECK_THROWS_AS((void)QLaurent::parse("q5"), qmspec::ParseError);
    CHECK_THROWS_AS((void)QLaurent::parse("x"), qmspec::ParseError);
}

TEST_CASE("qlaurent: str/parse round trip") {
    std::mt19937 rng(7208'1);
    for (int iter = 0; iter < 500; ++iter) {
        QLaurent x = random_poly(rng);
        CHECK(QLaurent::parse(x.str()) == x);
    }
}
