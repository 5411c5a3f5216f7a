#include "qmspec/verify.hpp"

#include <algorithm>
#include <chrono>
#include <random>
#include <set>
#include <sstream>
#include <unordered_set>

#include "qmspec/counting.hpp"
#include "qmspec/diagrams.hpp"
#include "qmspec/qlaurent.hpp"
#include "qmspec/qminors.hpp"
#include "qmspec/qtorus.hpp"
#include "qmspec/restoration.hpp"

namespace qmspec {

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
    bool pass;
    std::string detail;
};

template <typename F>
CheckResult timed(std::string name, F&& body) {
    CheckResult r;
    r.name = std::move(name);
    auto t0 = Clock::now();
    try {
        Outcome o = body();
        r.pass = o.pass;
        r.detail = std::move(o.detail);
    } catch (const std::exception& e) {
        r.pass = false;
        r.detail = std::string("exception: ") + e.what();
    }
    r.millis = std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
    return r;
}

// ---- deterministic fuzz inputs ------------------------------------------
// Raw mt19937 draws only (no distributions), so the stream is identical on
// every platform.

int draw(std::mt19937& rng, int lo, int hi) { // inclusive
    return lo + static_cast<int>(rng() % static_cast<unsigned>(hi - lo + 1));
}

QLaurent random_ql(std::mt19937& rng) {
    QLaurent x;
    int nterms = draw(rng, 0, 8);
    for (int i = 0; i < nterms; ++i)
        x += QLaurent::term(draw(rng, -9, 9), draw(rng, -16, 16));
    return x;
}

QLaurent random_unit(std::mt19937& rng) {
    return QLaurent::term(draw(rng, 0, 1) ? 1 : -1, draw(rng, -16, 16));
}

Monomial random_monomial(const TorusPresentation& p, std::mt19937& rng) {
    Monomial m = p.identity_monomial();
    for (auto& e : m.e) e = static_cast<int32_t>(draw(rng, -3, 3));
    return m;
}

TorusElement random_torus(const TorusPresentation& p, std::mt19937& rng) {
    TorusElement x;
    int nterms = draw(rng, 0, 3);
    for (int i = 0; i < nterms; ++i) {
        QLaurent c;
        int cterms = draw(rng, 1, 2);
        for (int j = 0; j < cterms; ++j)
            c += QLaurent::term(draw(rng, -5, 5), draw(rng, -8, 8));
        x.add_term(random_monomial(p, rng), c);
    }
    return x;
}

// ---- brute-force diagram oracle ------------------------------------------
// Every achievable union of truncated rows/columns, by closing over all
// subsets of the 2n^2 elementary pieces. Viable for n <= 3 (2^18 subsets).
std::unordered_set<uint64_t> all_piece_unions(int n) {
    std::vector<uint64_t> pieces;
    for (int l = 1; l <= n; ++l)
        for (int g = 1; g <= n; ++g) {
            uint64_t col = 0, row = 0;
            for (int i = 1; i <= l; ++i) col |= uint64_t{1} << cell_bit(n, i, g);
            for (int a = 1; a <= g; ++a) row |= uint64_t{1} << cell_bit(n, l, a);
            pieces.push_back(col);
            pieces.push_back(row);
        }
    std::unordered_set<uint64_t> unions;
    const std::size_t count = pieces.size();
    for (uint64_t sub = 0; sub < (uint64_t{1} << count); ++sub) {
        uint64_t u = 0;
        uint64_t s = sub;
        while (s) {
            int b = std::countr_zero(s);
            u |= pieces[b];
            s &= s - 1;
        }
        unions.insert(u);
    }
    return unions;
}

std::string histogram_str(const std::map<int, long long>& h) {
    std::ostringstream out;
    out << '{';
    bool first = true;
    for (const auto& [t, c] : h) {
        if (!first) out << ", ";
        out << t << ':' << c;
        first = false;
    }
    out << '}';
    return out.str();
}

// ---- suites ---------------------------------------------------------------

std::vector<CheckResult> suite_counting(int n) {
    std::vector<CheckResult> out;

    out.push_back(timed("totals-agree", [&]() -> Outcome {
        std::string last;
        for (int m = 1; m <= n; ++m) {
            CountValue a = total_count_double_sum(m), b = poly_bernoulli_nn(m), c = total_count_sum_of_squares(m);
            if (a != b || b != c)
                return {false, "disagreement at n=" + std::to_string(m) + ": " +
                                   a.get_str() + " / " + b.get_str() + " / " + c.get_str()};
            last = a.get_str();
        }
        return {true, "three closed forms agree for n=1.." + std::to_string(n) +
                          "; last total " + last};
    }));

    out.push_back(timed("stirling-consistency", [&]() -> Outcome {
        for (int m = 0; m <= 12; ++m)
            for (int k = 0; k <= 12; ++k)
                if (stirling2(m, k) != stirling2_by_formula(m, k))
                    return {false, "recurrence vs formula differ at (" + std::to_string(m) +
                                       "," + std::to_string(k) + ")"};
        return {true, "recurrence equals inclusion-exclusion for n,k <= 12"};
    }));

    out.push_back(timed("gamma-sum-identity", [&]() -> Outcome {
        for (int t = 0; t <= n; ++t) {
            CountValue sum = 0;
            for (const RVector& r : all_r_vectors(n, t)) sum += gamma_size(n, r);
            CountValue expect = factorial(t) * stirling2(n + 1, t + 1);
            if (sum != expect)
                return {false, "t=" + std::to_string(t) + ": sum " + sum.get_str() +
                                   " != " + expect.get_str()};
        }
        return {true, "sum of |Gamma_r| over R_t equals t!*S(n+1,t+1) for t=0.." +
                          std::to_string(n)};
    }));

    out.push_back(timed("composition-identity", [&]() -> Outcome {
        for (int t = 0; t <= n; ++t) {
            CountValue sum = 0;
            for (const auto& parts : compositions(n + 1, t + 1)) {
                CountValue prod = 1;
                for (std::size_t l = 0; l < parts.size(); ++l)
                    prod *= int_pow(static_cast<unsigned long>(l + 1),
                                    static_cast<unsigned long>(parts[l] - 1));
                sum += prod;
            }
            if (sum != stirling2(n + 1, t + 1))
                return {false, "t=" + std::to_string(t) + ": composition sum " +
                                   sum.get_str() + " != S(n+1,t+1)"};
        }
        return {true, "weighted composition sum equals S(n+1,t+1) for t=0.." +
                          std::to_string(n)};
    }));

    out.push_back(timed("composition-roundtrip", [&]() -> Outcome {
        long cases = 0;
        for (int t = 0; t <= n; ++t) {
            for (const auto& parts : compositions(n + 1, t + 1)) {
                RVector r = composition_to_rvector(n, parts);
                if (!r.valid(n) || r.t() != t)
                    return {false, "transport produced invalid r-vector"};
                if (rvector_to_composition(n, r) != parts)
                    return {false, "round trip failed on a composition of " +
                                       std::to_string(n + 1)};
                ++cases;
            }
            for (const RVector& r : all_r_vectors(n, t))
                if (!(composition_to_rvector(n, rvector_to_composition(n, r)) == r))
                    return {false, "round trip failed on r=(" + r.str() + ")"};
        }
        return {true, std::to_string(cases) + " compositions transported both ways"};
    }));

    out.push_back(timed("rank-count-square-identity", [&]() -> Outcome {
        for (int t = 0; t <= n; ++t) {
            CountValue sum = 0;
            for (const RVector& r : all_r_vectors(n, t)) sum += gamma_size(n, r);
            if (rank_count(n, t) != sum * sum)
                return {false, "t=" + std::to_string(t) + ": rank_count != (sum |Gamma_r|)^2"};
        }
        return {true, "rank_count(n,t) = (sum of |Gamma_r|)^2 for t=0.." + std::to_string(n)};
    }));

    return out;
}

std::vector<CheckResult> suite_enumeration(int n) {
    std::vector<CheckResult> out;

    if (n <= 3) {
        out.push_back(timed("membership-brute-force", [&]() -> Outcome {
            auto unions = all_piece_unions(n);
            const uint64_t limit = uint64_t{1} << (n * n);
            for (uint64_t mask = 0; mask < limit; ++mask)
                if (is_diagram(n, mask) != unions.contains(mask))
                    return {false, "criterion disagrees with brute force on mask " +
                                       std::to_string(mask)};
            return {true, std::to_string(limit) + " subsets checked against union closure"};
        }));
    }

    out.push_back(timed("count-matches-closed-form", [&]() -> Outcome {
        long count = 0;
        enumerate_W(n, [&](const Diagram&) { ++count; });
        CountValue expect = poly_bernoulli_nn(n);
        if (CountValue(count) != expect)
            return {false, "enumerated " + std::to_string(count) + ", closed form " +
                               expect.get_str()};
        return {true, std::to_string(count) + " diagrams, matching the closed form"};
    }));

    out.push_back(timed("canonical-order", [&]() -> Outcome {
        bool ok = true;
        bool have_prev = false;
        Diagram prev(1, 0);
        enumerate_W(n, [&](const Diagram& w) {
            if (have_prev && !(prev < w)) ok = false;
            prev = w;
            have_prev = true;
        });
        return {ok, ok ? "stream strictly increasing in bit-string order"
                       : "ordering violation in enumeration stream"};
    }));

    return out;
}

std::vector<CheckResult> suite_structural(int n) {
    std::vector<CheckResult> out;
    const TorusPresentation p{n};
    const auto diagrams = all_diagrams(n);

    out.push_back(timed("restored-q-quantum", [&]() -> Outcome {
        for (const Diagram& w : diagrams) {
            RelationReport rep = check_q_quantum(p, restore(n, w));
            if (!rep.ok()) {
                const auto& v = rep.violations.front();
                return {false, "diagram " + w.str() + " violates " +
                                   relation_name(v.rel) + " at rows (" +
                                   std::to_string(v.i) + "," + std::to_string(v.j) +
                                   ") cols (" + std::to_string(v.a) + "," +
                                   std::to_string(v.b) + ")"};
            }
        }
        return {true, std::to_string(diagrams.size()) +
                          " restored matrices satisfy all 2x2 relations"};
    }));

    out.push_back(timed("zeros-inside-diagram", [&]() -> Outcome {
        for (const Diagram& w : diagrams) {
            uint64_t zeros = zero_pattern(restore(n, w));
            if ((zeros & ~w.cells()) != 0)
                return {false, "diagram " + w.str() +
                                   " has a vanishing entry outside its cells"};
        }
        return {true, std::to_string(diagrams.size()) +
                          " diagrams: entries off the diagram never vanish"};
    }));

    out.push_back(timed("vanishing-on-wr", [&]() -> Outcome {
        long long pairs = 0;
        for (const RVector& r : all_r_vectors(n)) {
            uint64_t wr = build_w_r(n, r).cells();
            for (const Diagram& w : diagrams) {
                if ((wr & ~w.cells()) != 0) continue; // need w containing w_r
                ++pairs;
                if ((wr & ~zero_pattern(restore(n, w))) != 0)
                    return {false, "w=" + w.str() + " contains w_(" + r.str() +
                                       ") but some entry on it survives"};
            }
        }
        return {true, std::to_string(pairs) + " (r, w) pairs with w containing w_r"};
    }));

    if (n <= 3) {
        out.push_back(timed("intermediate-stages-jbeta", [&]() -> Outcome {
            long long stages = 0;
            bool ok = true;
            std::string fail;
            for (const Diagram& w : diagrams) {
                restore(n, w, [&](Position stage, const QuantumMatrix& M) {
                    ++stages;
                    if (ok && !check_jbeta_quantum(p, M, stage.row, stage.col).ok()) {
                        ok = false;
                        fail = "diagram " + w.str() + " fails at stage (" +
                               std::to_string(stage.row) + "," +
                               std::to_string(stage.col) + ")";
                    }
                });
            }
            return {ok, ok ? std::to_string(stages) + " intermediate stages pass their"
                             " stage-indexed relation suite"
                           : fail};
        }));
    }

    return out;
}

std::vector<CheckResult> suite_roundtrip(int n) {
    std::vector<CheckResult> out;

    out.push_back(timed(n <= 3 ? "delete-undoes-restore" : "delete-undoes-restore-sampled",
                        [&]() -> Outcome {
        auto diagrams = all_diagrams(n);
        std::size_t total = diagrams.size();
        if (n >= 4) { // sample 500 with a fixed, platform-stable shuffle
            std::mt19937 rng(20240614u);
            for (std::size_t i = 0; i < 500 && i + 1 < diagrams.size(); ++i) {
                std::size_t j = i + rng() % (diagrams.size() - i);
                std::swap(diagrams[i], diagrams[j]);
            }
            if (diagrams.size() > 500) diagrams.erase(diagrams.begin() + 500, diagrams.end());
        }
        for (const Diagram& w : diagrams) {
            QuantumMatrix back = delete_derivations(restore(n, w));
            QuantumMatrix init = initial_matrix(n, w);
            if (!(back.entries == init.entries))
                return {false, "round trip disagrees on diagram " + w.str()};
        }
        return {true, std::to_string(diagrams.size()) + "/" + std::to_string(total) +
                          " round trips return the initial matrix"};
    }));

    return out;
}

std::vector<CheckResult> suite_census(int n, int jobs) {
    std::vector<CheckResult> out;

    out.push_back(timed("census-matches-closed-form", [&]() -> Outcome {
        auto census = rank_census(n, jobs);
        long total = 0;
        for (int t = 0; t <= n; ++t) {
            long got = census.count(t) ? census.at(t) : 0;
            total += got;
            if (CountValue(got) != rank_count(n, t))
                return {false, "rank " + std::to_string(t) + ": got " +
                                   std::to_string(got) + ", closed form " +
                                   rank_count(n, t).get_str()};
        }
        if (CountValue(total) != poly_bernoulli_nn(n))
            return {false, "census total " + std::to_string(total) +
                               " != total count"};
        return {true, histogram_str(census) + " matches (t!*S(n+1,t+1))^2, total " +
                          std::to_string(total) + "; every record gap-free"};
    }));

    return out;
}

std::vector<CheckResult> suite_localized(int n) {
    std::vector<CheckResult> out;

    out.push_back(timed("gamma-family-wellformed", [&]() -> Outcome {
        std::set<uint64_t> seen_global;
        long long built = 0;
        for (const RVector& r : all_r_vectors(n)) {
            Diagram wr = build_w_r(n, r);
            if (!column_convexity_holds(wr))
                return {false, "w_(" + r.str() + ") is not column convex"};
            std::set<uint64_t> family;
            for (const GammaVector& g : enumerate_Gamma(n, r)) {
                Diagram w = build_w_r_gamma(n, r, g); // validates membership
                ++built;
                if ((wr.cells() & ~w.cells()) != 0)
                    return {false, "w_(" + r.str() + "),(" + g.str() +
                                       ") does not contain w_r"};
                for (int k = 1; k <= r.t(); ++k)
                    if (w.contains(r.r[k - 1], k))
                        return {false, "w_(" + r.str() + "),(" + g.str() +
                                           ") contains the excluded cell (r_k,k)"};
                if (!family.insert(w.cells()).second)
                    return {false, "family of r=(" + r.str() + ") has a repeat"};
                if (!seen_global.insert((uint64_t(w.cells()) << 6) ^
                                        static_cast<uint64_t>(r.t()))
                         .second) {
                    // same (cells, t) can only repeat if (r,gamma) -> w failed
                    // to be injective for this t; cross-t repeats are fine
                    return {false, "(r,gamma) -> diagram is not injective at t=" +
                                       std::to_string(r.t())};
                }
            }
            if (CountValue(static_cast<long>(family.size())) != gamma_size(n, r))
                return {false, "family size of r=(" + r.str() + ") != |Gamma_r|"};
        }
        return {true, std::to_string(built) + " diagrams w_{r,gamma} built; all valid,"
                          " distinct per rank, containing w_r"};
    }));

    out.push_back(timed("family-zero-structure", [&]() -> Outcome {
        for (const RVector& r : all_r_vectors(n)) {
            uint64_t wr = build_w_r(n, r).cells();
            for (const GammaVector& g : enumerate_Gamma(n, r)) {
                Diagram w = build_w_r_gamma(n, r, g);
                uint64_t zeros = zero_pattern(restore(n, w));
                if ((wr & ~zeros) != 0)
                    return {false, "restored w_(" + r.str() + "),(" + g.str() +
                                       ") does not vanish on w_r"};
                for (int k = 1; k <= r.t(); ++k)
                    if (mask_contains(zeros, n, r.r[k - 1], k))
                        return {false, "restored w_(" + r.str() + "),(" + g.str() +
                                           ") kills the pivot entry (r_" +
                                           std::to_string(k) + "," + std::to_string(k) +
                                           ")"};
            }
        }
        return {true, "every w_{r,gamma} restores with zeros on w_r and live pivots"};
    }));

    out.push_back(timed("family-equals-survivors", [&]() -> Outcome {
        for (const RVector& r : all_r_vectors(n)) {
            std::vector<Diagram> family;
            for (const GammaVector& g : enumerate_Gamma(n, r))
                family.push_back(build_w_r_gamma(n, r, g));
            std::sort(family.begin(), family.end());
            if (!(surviving_diagrams(n, r) == family))
                return {false, "survival scan of r=(" + r.str() +
                                   ") differs from the constructed family"};
        }
        return {true, "survival scan reproduces the gamma family for every r"};
    }));

    return out;
}

std::vector<CheckResult> suite_fuzz(int n) {
    std::vector<CheckResult> out;
    const int tn = std::min(n, 3);
    const TorusPresentation p{tn};

    out.push_back(timed("qlaurent-ring-axioms", [&]() -> Outcome {
        std::mt19937 rng(11590927u);
        const int cases = 4000;
        for (int i = 0; i < cases; ++i) {
            QLaurent a = random_ql(rng), b = random_ql(rng), c = random_ql(rng);
            if (!((a + b) + c == a + (b + c)) || !(a + b == b + a) ||
                !((a * b) * c == a * (b * c)) || !(a * b == b * a) ||
                !(a * (b + c) == a * b + a * c) || !((a - a).is_zero()) ||
                !((a * QLaurent(1)) == a))
                return {false, "axiom violated at case " + std::to_string(i)};
        }
        return {true, std::to_string(cases) + " random triples satisfy the ring axioms"};
    }));

    out.push_back(timed("qlaurent-units", [&]() -> Outcome {
        std::mt19937 rng(72081u);
        const int cases = 3000;
        for (int i = 0; i < cases; ++i) {
            QLaurent u = random_unit(rng);
            if (!((u * u.inverted_unit()).is_one()))
                return {false, "unit inverse failed at case " + std::to_string(i)};
            QLaurent bad = u + QLaurent::term(draw(rng, 1, 5), 20 + draw(rng, 0, 5));
            try {
                bad.inverted_unit();
                return {false, "two-term element accepted as unit at case " +
                                   std::to_string(i)};
            } catch (const NotAUnitError&) {
            }
        }
        return {true, std::to_string(cases) + " units inverted; non-units rejected"};
    }));

    out.push_back(timed("qtorus-ring-axioms", [&]() -> Outcome {
        std::mt19937 rng(884422u);
        const int cases = 1500;
        for (int i = 0; i < cases; ++i) {
            TorusElement x = random_torus(p, rng), y = random_torus(p, rng),
                         z = random_torus(p, rng);
            if (!(torus_mul(p, torus_mul(p, x, y), z) ==
                  torus_mul(p, x, torus_mul(p, y, z))))
                return {false, "associativity failed at case " + std::to_string(i)};
            if (!(torus_mul(p, x, y + z) == torus_mul(p, x, y) + torus_mul(p, x, z)))
                return {false, "left distributivity failed at case " + std::to_string(i)};
            if (!(torus_mul(p, x + y, z) == torus_mul(p, x, z) + torus_mul(p, y, z)))
                return {false, "right distributivity failed at case " + std::to_string(i)};
        }
        return {true, std::to_string(cases) + " random triples satisfy the ring axioms"};
    }));

    out.push_back(timed("qtorus-commutation", [&]() -> Outcome {
        std::mt19937 rng(5150123u);
        const int cases = 2000;
        for (int i = 0; i < cases; ++i) {
            Monomial e = random_monomial(p, rng), f = random_monomial(p, rng);
            TorusElement A = TorusElement::term(e, QLaurent(1));
            TorusElement B = TorusElement::term(f, QLaurent(1));
            long d = p.twist(e, f) - p.twist(f, e);
            TorusElement lhs = torus_mul(p, A, B);
            TorusElement rhs = scale(QLaurent::q_power(static_cast<int>(d)),
                                     torus_mul(p, B, A));
            if (!(lhs == rhs))
                return {false, "reordering exponent wrong at case " + std::to_string(i)};
        }
        return {true, std::to_string(cases) +
                          " monomial pairs reorder by exactly q^(c(e,f)-c(f,e))"};
    }));

    out.push_back(timed("qtorus-inverses", [&]() -> Outcome {
        std::mt19937 rng(430107u);
        const int cases = 1500;
        for (int i = 0; i < cases; ++i) {
            TorusElement a = TorusElement::term(random_monomial(p, rng), random_unit(rng));
            TorusElement inv = torus_invert_monomial(p, a);
            if (!(torus_mul(p, a, inv) == p.one()) || !(torus_mul(p, inv, a) == p.one()))
                return {false, "two-sided inverse failed at case " + std::to_string(i)};
        }
        return {true, std::to_string(cases) + " monomials inverted on both sides"};
    }));

    return out;
}

struct SuiteEntry {
    const char* name;
    int max_n;
    std::vector<CheckResult> (*run)(int n, int jobs);
};

const SuiteEntry kSuites[] = {
    {"counting", 10, [](int n, int) { return suite_counting(n); }},
    {"enumeration", 6, [](int n, int) { return suite_enumeration(n); }},
    {"structural", 3, [](int n, int) { return suite_structural(n); }},
    {"roundtrip", 4, [](int n, int) { return suite_roundtrip(n); }},
    {"localized", 3, [](int n, int) { return suite_localized(n); }},
    {"census", 4, [](int n, int jobs) { return suite_census(n, jobs); }},
    {"fuzz", 4, [](int n, int) { return suite_fuzz(n); }},
};

} // namespace

std::vector<std::string> suite_names() {
    std::vector<std::string> names;
    for (const auto& s : kSuites) names.push_back(s.name);
    return names;
}

int suite_max_n(const std::string& suite) {
    for (const auto& s : kSuites)
        if (suite == s.name) return s.max_n;
    throw ParseError("unknown suite \"" + suite + "\"");
}

std::vector<CheckResult> run_suite(const std::string& suite, int n, int jobs) {
    if (n < 1) throw SizeTooLargeError("n must be >= 1");
    std::vector<CheckResult> out;
    if (suite == "all") {
        for (const auto& s : kSuites) {
            if (n > s.max_n) continue; // out-of-range suites are skipped by "all"
            auto part = s.run(n, jobs);
            for (auto& r : part) r.name = std::string(s.name) + "/" + r.name;
            out.insert(out.end(), std::make_move_iterator(part.begin()),
                       std::make_move_iterator(part.end()));
        }
        return out;
    }
    for (const auto& s : kSuites) {
        if (suite != s.name) continue;
        if (n > s.max_n)
            throw SizeTooLargeError("suite \"" + suite + "\" supports n <= " +
                                    std::to_string(s.max_n));
        auto part = s.run(n, jobs);
        for (auto& r : part) r.name = std::string(s.name) + "/" + r.name;
        return part;
    }
    throw ParseError("unknown suite \"" + suite + "\"");
}

} // namespace qmspec
