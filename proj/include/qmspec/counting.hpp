#pragma once

#include <vector>

#include "qmspec/bigint.hpp"
#include "qmspec/diagrams.hpp" // RVector
#include "qmspec/errors.hpp"

namespace qmspec {

using CountValue = BigInt;

/// Stirling number of the second kind via the recurrence
/// S(n,k) = k*S(n-1,k) + S(n-1,k-1); no cancellation, exact.
CountValue stirling2(int n, int k);

/// The inclusion-exclusion form (-1)^k/k! * sum_j (-1)^j C(k,j) j^n,
/// kept as an independent cross-check of the recurrence.
CountValue stirling2_by_formula(int n, int k);

/// Total class count as the alternating double sum
/// (-1)^(n-1) * sum_{k=1}^n (k+1)^n sum_{j=1}^k (-1)^(j-1) C(k,j) j^n.
CountValue total_count_double_sum(int n);

/// The same total in Stirling-weighted form
/// (-1)^n sum_k (-1)^k k! (k+1)^n S(n,k), i.e. the poly-Bernoulli
/// number B_n^(-n).
CountValue poly_bernoulli_nn(int n);

/// (t! * S(n+1,t+1))^2 — the closed-form count of rank-t classes.
CountValue rank_count(int n, int t);

/// sum_{t=0}^n rank_count(n,t); must agree with the other two totals.
CountValue total_count_sum_of_squares(int n);

/// |Gamma_r| = 1^{r_1} 2^{r_2-r_1} ... (t+1)^{n-r_t}.
CountValue gamma_size(int n, const RVector& r);

/// Partial-sum bijection between compositions of n+1 into t+1 positive
/// parts and r-vectors: (a_1,...,a_{t+1}) -> (a_1, a_1+a_2, ...).
/// Throws BadCompositionError on non-positive parts or sum != n+1.
RVector composition_to_rvector(int n, const std::vector<int>& parts);
std::vector<int> rvector_to_composition(int n, const RVector& r);

/// All compositions of `total` into `parts` positive parts, lexicographic.
std::vector<std::vector<int>> compositions(int total, int parts);

} // namespace qmspec
