#pragma once

#include <stdexcept>
#include <string>

namespace qmspec {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Inverting a Laurent polynomial that is not of the form +-q^k.
struct NotAUnitError : Error {
    using Error::Error;
};

// Inverting a torus element that is not a single unit-coefficient monomial.
struct NotInvertibleError : Error {
    using Error::Error;
};

// A bit grid that is not a union of truncated rows and columns.
struct NotADiagramError : Error {
    using Error::Error;
};

// Grid size outside the supported range for the requested operation.
struct SizeTooLargeError : Error {
    using Error::Error;
};

struct GammaOutOfRangeError : Error {
    using Error::Error;
};

// A restoration/deletion pivot that is nonzero but not a single
// unit-coefficient monomial.  This would falsify the structural theory
// the whole computation rests on, so it aborts the run.
struct PivotNotMonomialError : Error {
    using Error::Error;
};

// Minor vanishing failed to be monotone in size; the rank partition
// would be inconsistent.
struct GapViolationError : Error {
    using Error::Error;
};

struct BadCompositionError : Error {
    using Error::Error;
};

struct ParseError : Error {
    using Error::Error;
};

} // namespace qmspec
