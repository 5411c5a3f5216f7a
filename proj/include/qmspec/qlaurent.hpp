#pragma once

#include <map>
#include <string>
#include <string_view>

#include "qmspec/bigint.hpp"
#include "qmspec/errors.hpp"

namespace qmspec {

/// Element of the commutative Laurent polynomial ring Z[q, q^-1],
/// stored as a canonical sparse map from q-exponent to coefficient.
/// Invariant: no stored coefficient is zero, so zero-testing is an
/// emptiness check and equality is map equality.
class QLaurent {
public:
    using TermMap = std::map<int, BigInt>;

    QLaurent() = default; // zero
    explicit QLaurent(long value);
    explicit QLaurent(BigInt value);

    // c * q^exp
    static QLaurent term(BigInt coeff, int exp);
    // q^exp
    static QLaurent q_power(int exp);
    // the commutator coefficient (q - q^-1)
    static QLaurent q_minus_q_inverse();

    bool is_zero() const { return terms_.empty(); }
    bool is_one() const;
    // exactly one term with coefficient +1 or -1
    bool is_unit() const;
    std::size_t term_count() const { return terms_.size(); }
    const TermMap& terms() const { return terms_; }

    QLaurent& operator+=(const QLaurent& rhs);
    QLaurent& operator-=(const QLaurent& rhs);
    QLaurent& operator*=(const QLaurent& rhs);
    friend QLaurent operator+(QLaurent a, const QLaurent& b) { return a += b; }
    friend QLaurent operator-(QLaurent a, const QLaurent& b) { return a -= b; }
    friend QLaurent operator*(const QLaurent& a, const QLaurent& b);
    QLaurent operator-() const;

    // multiply by q^k in place (shifts every exponent)
    QLaurent& shift(int k);

    // multiplicative inverse; throws NotAUnitError unless *this is +-q^k
    QLaurent inverted_unit() const;

    bool operator==(const QLaurent&) const = default;

    // "3*q^-2 + 1 - q^4", terms in increasing exponent order; "0" for zero
    std::string str() const;
    static QLaurent parse(std::string_view text); // throws ParseError

private:
    TermMap terms_;

    void add_term(int exp, const BigInt& coeff);
};

} // namespace qmspec
