#include "qmspec/counting.hpp"

#include <cassert>

namespace qmspec {

CountValue stirling2(int n, int k) {
    if (n < 0 || k < 0) return 0;
    if (k > n) return 0;
    // one rolling row of the triangle, S(m, 0..k)
    std::vector<CountValue> row(k + 1, 0);
    row[0] = 1; // S(0,0)
    for (int m = 1; m <= n; ++m) {
        for (int j = std::min(m, k); j >= 1; --j) row[j] = j * row[j] + row[j - 1];
        row[0] = 0; // S(m,0) = 0 for m >= 1
    }
    return row[k];
}

CountValue stirling2_by_formula(int n, int k) {
    if (n < 0 || k < 0 || k > n) return 0;
    CountValue sum = 0;
    for (int j = 0; j <= k; ++j) {
        CountValue term = binomial(k, j) * int_pow(static_cast<unsigned long>(j),
                                                   static_cast<unsigned long>(n));
        sum += (j % 2 == 0) ? term : -term;
    }
    if (k % 2 != 0) sum = -sum;
    CountValue kf = factorial(k);
    assert(sum % kf == 0);
    return sum / kf;
}

CountValue total_count_double_sum(int n) {
    CountValue total = 0;
    for (int k = 1; k <= n; ++k) {
        CountValue inner = 0;
        for (int j = 1; j <= k; ++j) {
            CountValue term = binomial(k, j) * int_pow(static_cast<unsigned long>(j),
                                                       static_cast<unsigned long>(n));
            inner += (j % 2 != 0) ? term : -term;
        }
        total += int_pow(static_cast<unsigned long>(k + 1),
                         static_cast<unsigned long>(n)) *
                 inner;
    }
    if (n % 2 == 0) total = -total;
    return total;
}

CountValue poly_bernoulli_nn(int n) {
    CountValue total = 0;
    for (int k = 1; k <= n; ++k) {
        CountValue term = factorial(k) *
                          int_pow(static_cast<unsigned long>(k + 1),
                                  static_cast<unsigned long>(n)) *
                          stirling2(n, k);
        total += (k % 2 == 0) ? term : -term;
    }
    if (n % 2 != 0) total = -total;
    return total;
}

CountValue rank_count(int n, int t) {
    CountValue v = factorial(t) * stirling2(n + 1, t + 1);
    return v * v;
}

CountValue total_count_sum_of_squares(int n) {
    CountValue total = 0;
    for (int t = 0; t <= n; ++t) total += rank_count(n, t);
    return total;
}

CountValue gamma_size(int n, const RVector& r) {
    r.require_valid(n);
    int t = r.t();
    CountValue prod = 1;
    int prev = 0;
    for (int l = 1; l <= t + 1; ++l) {
        int next = (l <= t) ? r.r[l - 1] : n;
        prod *= int_pow(static_cast<unsigned long>(l),
                        static_cast<unsigned long>(next - prev));
        prev = next;
    }
    return prod;
}

RVector composition_to_rvector(int n, const std::vector<int>& parts) {
    int sum = 0;
    for (int a : parts) {
        if (a <= 0)
            throw BadCompositionError("composition parts must be positive, got " +
                                      std::to_string(a));
        sum += a;
    }
    if (sum != n + 1)
        throw BadCompositionError("composition sums to " + std::to_string(sum) +
                                  ", expected n+1 = " + std::to_string(n + 1));
    RVector r;
    int acc = 0;
    for (std::size_t i = 0; i + 1 < parts.size(); ++i) {
        acc += parts[i];
        r.r.push_back(acc);
    }
    return r;
}

std::vector<int> rvector_to_composition(int n, const RVector& r) {
    r.require_valid(n);
    std::vector<int> parts;
    int prev = 0;
    for (int v : r.r) {
        parts.push_back(v - prev);
        prev = v;
    }
    parts.push_back(n + 1 - prev);
    return parts;
}

std::vector<std::vector<int>> compositions(int total, int parts) {
    std::vector<std::vector<int>> out;
    if (parts <= 0 || total < parts) return out;
    std::vector<int> c(parts, 1);
    c[parts - 1] = total - (parts - 1);
    // lexicographic successor: walk left until the suffix after i can
    // donate one unit while keeping every later part >= 1
    while (true) {
        out.push_back(c);
        int remaining = 0;
        int i = parts - 1;
        while (true) {
            remaining += c[i];
            --i;
            if (i < 0 || remaining >= parts - i) break;
        }
        if (i < 0) break;
        ++c[i];
        for (int j = i + 1; j < parts; ++j) c[j] = 1;
        c[parts - 1] = remaining - 1 - (parts - 2 - i);
    }
    return out;
}

} // namespace qmspec
