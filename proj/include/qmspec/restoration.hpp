#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "qmspec/diagrams.hpp"
#include "qmspec/qtorus.hpp"

namespace qmspec {

/// The step ladder ([1,n]^2 union {(n,n+1)}) minus {(1,1)}, ascending
/// lexicographic: (1,2)...(1,n),(2,1)...(n,n),(n,n+1). The last entry is
/// only a stage label; no update is performed at it.
std::vector<Position> standard_steps(int n);

/// Least ladder element strictly above r (lexicographic).
Position step_successor(int n, Position r);

/// The matrix of generators with zeros exactly on w: entry (i,a) is 0 for
/// (i,a) in w and the bare generator T_{i,a} otherwise.
QuantumMatrix initial_matrix(int n, const Diagram& w);

/// Called once per stage label with the matrix at that stage: during
/// restoration, (1,2) carries the initial matrix and each step r hands
/// over the matrix at its successor; (n,n+1) carries the final result.
using StageObserver = std::function<void(Position stage, const QuantumMatrix&)>;

/// Ascending sweep: for each step r = (j,b) below (n,n+1), if the pivot
/// entry (j,b) is nonzero, add entry(i,b) * pivot^-1 * entry(j,a) to
/// entry(i,a) for all i < j, a < b. At every step the pivot must still
/// equal its initial value (zero or the bare generator): entry (j,b) is
/// only ever written by steps with strictly larger row, and those come
/// later. A violation throws PivotNotMonomialError — it would falsify the
/// structural assumptions, so the run aborts rather than continue.
QuantumMatrix restore(int n, const Diagram& w);
QuantumMatrix restore(int n, const Diagram& w, const StageObserver& observe);

/// Descending sweep undoing restore: subtracts the same correction, using
/// the current (j,b) entry as pivot. The pivot must be zero or a single
/// unit-coefficient monomial (PivotNotMonomialError otherwise).
QuantumMatrix delete_derivations(const QuantumMatrix& M);

/// Bit grid of vanishing entries: bit (i-1)*n + (a-1) set iff entry is 0.
uint64_t zero_pattern(const QuantumMatrix& M);

} // namespace qmspec
