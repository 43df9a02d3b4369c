#pragma once

#include <mpfr.h>

#include "machin/errors.hpp"

namespace machin {

// Requested decimal digits plus the guard digits actually carried by
// intermediate arithmetic.  Working precision = digits + guard.
struct PrecisionContext {
    long digits;
    long guard;

    explicit PrecisionContext(long d, long g = 10) : digits(d), guard(g) {
        if (d < 1) throw DomainError("PrecisionContext: digits must be >= 1");
        if (g < 0) throw DomainError("PrecisionContext: guard must be >= 0");
    }

    long work_digits() const { return digits + guard; }

    // Binary precision backing the decimal request, with a little slack.
    mpfr_prec_t bits() const {
        return static_cast<mpfr_prec_t>(static_cast<double>(work_digits()) * 3.3219280948873626) + 16;
    }

    PrecisionContext escalated() const { return PrecisionContext(digits * 2, guard); }
    PrecisionContext plus(long extra) const { return PrecisionContext(digits + extra, guard); }

    bool operator==(const PrecisionContext&) const = default;
};

inline PrecisionContext wider(const PrecisionContext& a, const PrecisionContext& b) {
    return a.work_digits() >= b.work_digits() ? a : b;
}

} // namespace machin
