#include "qmspec/qlaurent.hpp"

#include <cctype>
#include <sstream>

namespace qmspec {

QLaurent::QLaurent(long value) {
    if (value != 0) terms_[0] = value;
}

QLaurent::QLaurent(BigInt value) {
    if (value != 0) terms_[0] = std::move(value);
}

QLaurent QLaurent::term(BigInt coeff, int exp) {
    QLaurent r;
    if (coeff != 0) r.terms_[exp] = std::move(coeff);
    return r;
}

QLaurent QLaurent::q_power(int exp) { return term(1, exp); }

QLaurent QLaurent::q_minus_q_inverse() {
    QLaurent r;
    r.terms_[1] = 1;
    r.terms_[-1] = -1;
    return r;
}

bool QLaurent::is_one() const {
    return terms_.size() == 1 && terms_.begin()->first == 0 &&
           terms_.begin()->second == 1;
}

bool QLaurent::is_unit() const {
    if (terms_.size() != 1) return false;
    const BigInt& c = terms_.begin()->second;
    return c == 1 || c == -1;
}

void QLaurent::add_term(int exp, const BigInt& coeff) {
    if (coeff == 0) return;
    auto it = terms_.find(exp);
    if (it == terms_.end()) {
        terms_.emplace(exp, coeff);
    } else {
        it->second += coeff;
        if (it->second == 0) terms_.erase(it);
    }
}

QLaurent& QLaurent::operator+=(const QLaurent& rhs) {
    for (const auto& [exp, c] : rhs.terms_) add_term(exp, c);
    return *this;
}

QLaurent& QLaurent::operator-=(const QLaurent& rhs) {
    for (const auto& [exp, c] : rhs.terms_) add_term(exp, -c);
    return *this;
}

QLaurent operator*(const QLaurent& a, const QLaurent& b) {
    QLaurent r;
    for (const auto& [ea, ca] : a.terms_)
        for (const auto& [eb, cb] : b.terms_) r.add_term(ea + eb, ca * cb);
    return r;
}

QLaurent& QLaurent::operator*=(const QLaurent& rhs) {
    *this = *this * rhs;
    return *this;
}

QLaurent QLaurent::operator-() const {
    QLaurent r;
    for (const auto& [exp, c] : terms_) r.terms_[exp] = -c;
    return r;
}

QLaurent& QLaurent::shift(int k) {
    if (k == 0 || terms_.empty()) return *this;
    TermMap shifted;
    for (auto& [exp, c] : terms_) shifted.emplace(exp + k, std::move(c));
    terms_ = std::move(shifted);
    return *this;
}

QLaurent QLaurent::inverted_unit() const {
    if (!is_unit())
        throw NotAUnitError("not a unit in Z[q,q^-1]: " + str());
    const auto& [exp, c] = *terms_.begin();
    return term(c, -exp); // (+-q^k)^-1 = +-q^-k
}

std::string QLaurent::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    for (const auto& [exp, c] : terms_) {
        BigInt mag = abs(c);
        if (first) {
            if (c < 0) out << '-';
            first = false;
        } else {
            out << (c < 0 ? " - " : " + ");
        }
        bool unit_coeff = (mag == 1);
        if (!unit_coeff || exp == 0) out << mag.get_str();
        if (exp != 0) {
            if (!unit_coeff) out << '*';
            out << 'q';
            if (exp != 1) out << '^' << exp;
        }
    }
    return out.str();
}

namespace {

// Recursive-descent helpers for the textual grammar. The input is a
// '+'/'-' separated list of terms "coeff", "coeff*q^exp", "q^exp", "q".
struct Cursor {
    std::string_view s;
    std::size_t i = 0;

    void skip_ws() {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    }
    bool done() {
        skip_ws();
        return i >= s.size();
    }
    char peek() { return s[i]; }
    [[noreturn]] void fail(const std::string& why) {
        throw ParseError(why + " at offset " + std::to_string(i) + " in \"" +
                         std::string(s) + "\"");
    }
    BigInt integer() {
        skip_ws();
        std::size_t start = i;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
        if (i == start) fail("expected integer");
        return BigInt(std::string(s.substr(start, i - start)));
    }
    int exponent() {
        skip_ws();
        bool neg = false;
        if (i < s.size() && (s[i] == '-' || s[i] == '+')) {
            neg = (s[i] == '-');
            ++i;
        }
        skip_ws();
        std::size_t start = i;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
        if (i == start) fail("expected exponent");
        int e = std::stoi(std::string(s.substr(start, i - start)));
        return neg ? -e : e;
    }
};

} // namespace

QLaurent QLaurent::parse(std::string_view text) {
    Cursor c{text};
    QLaurent result;
    if (c.done()) c.fail("empty input");
    bool first = true;
    while (!c.done()) {
        // sign separating / leading the term
        bool neg = false;
        c.skip_ws();
        if (c.peek() == '+' || c.peek() == '-') {
            neg = (c.peek() == '-');
            ++c.i;
        } else if (!first) {
            c.fail("expected '+' or '-' between terms");
        }
        c.skip_ws();
        if (c.done()) c.fail("dangling sign");

        BigInt coeff = 1;
        bool have_coeff = false;
        if (std::isdigit(static_cast<unsigned char>(c.peek()))) {
            coeff = c.integer();
            have_coeff = true;
        }
        int exp = 0;
        c.skip_ws();
        if (have_coeff && !c.done() && c.peek() == '*') {
            ++c.i;
            c.skip_ws();
            if (c.done() || c.peek() != 'q') c.fail("expected 'q' after '*'");
        }
        if (!c.done() && c.peek() == 'q') {
            ++c.i;
            exp = 1;
            c.skip_ws();
            if (!c.done() && c.peek() == '^') {
                ++c.i;
                exp = c.exponent();
            }
        } else if (!have_coeff) {
            c.fail("expected coefficient or 'q'");
        }
        if (neg) coeff = -coeff;
        result.add_term(exp, coeff);
        first = false;
    }
    return result;
}

} // namespace qmspec
