#pragma once

#include <gmpxx.h>

#include <string>

#include "machin/errors.hpp"

namespace machin {

using BigInt = mpz_class;

// Exact rational kept in canonical form (lowest terms, positive denominator)
// after every operation.  Zero is always 0/1.
class BigRational {
public:
    BigRational() : q_(0) {}
    BigRational(long n) : q_(n) {}
    BigRational(const BigInt& n) : q_(n) {}
    BigRational(long num, long den) : BigRational(BigInt(num), BigInt(den)) {}
    BigRational(const BigInt& num, const BigInt& den) {
        if (den == 0) throw DomainError("BigRational: zero denominator");
        q_ = mpq_class(num, den);
        q_.canonicalize();
    }
    // Decimal strings, e.g. ("-239", "1").
    BigRational(const std::string& num, const std::string& den)
        : BigRational(parse_int(num), parse_int(den)) {}

    BigInt num() const { return q_.get_num(); }
    BigInt den() const { return q_.get_den(); }
    const mpq_class& raw() const { return q_; }

    int sign() const { return sgn(q_); }
    bool is_zero() const { return sgn(q_) == 0; }
    bool is_integer() const { return q_.get_den() == 1; }

    BigRational operator-() const { return BigRational(mpq_class(-q_)); }
    BigRational abs() const { return sign() < 0 ? -*this : *this; }
    BigRational inverse() const {
        if (is_zero()) throw DomainError("BigRational: inverse of zero");
        return BigRational(den(), num());
    }

    friend BigRational operator+(const BigRational& a, const BigRational& b) {
        return BigRational(mpq_class(a.q_ + b.q_));
    }
    friend BigRational operator-(const BigRational& a, const BigRational& b) {
        return BigRational(mpq_class(a.q_ - b.q_));
    }
    friend BigRational operator*(const BigRational& a, const BigRational& b) {
        return BigRational(mpq_class(a.q_ * b.q_));
    }
    friend BigRational operator/(const BigRational& a, const BigRational& b) {
        if (b.is_zero()) throw DomainError("BigRational: division by zero");
        return BigRational(mpq_class(a.q_ / b.q_));
    }

    friend bool operator==(const BigRational& a, const BigRational& b) { return mpq_cmp(a.q_.get_mpq_t(), b.q_.get_mpq_t()) == 0; }
    friend bool operator!=(const BigRational& a, const BigRational& b) { return !(a == b); }
    friend bool operator<(const BigRational& a, const BigRational& b) { return mpq_cmp(a.q_.get_mpq_t(), b.q_.get_mpq_t()) < 0; }
    friend bool operator>(const BigRational& a, const BigRational& b) { return b < a; }
    friend bool operator<=(const BigRational& a, const BigRational& b) { return !(b < a); }
    friend bool operator>=(const BigRational& a, const BigRational& b) { return !(a < b); }

    // "p/q", or just "p" for integers.
    std::string str() const {
        if (is_integer()) return num().get_str();
        return num().get_str() + "/" + den().get_str();
    }

    // Decimal integer parse (optional leading '-').
    static BigInt parse_int(const std::string& s) {
        if (s.empty()) throw ParseError("BigRational: empty integer string");
        mpz_class z;
        if (mpz_set_str(z.get_mpz_t(), s.c_str(), 10) != 0)
            throw ParseError("BigRational: bad integer string '" + s + "'");
        return z;
    }

private:
    explicit BigRational(const mpq_class& q) : q_(q) {} // arithmetic results are already canonical

    mpq_class q_;
};

} // namespace machin
