#pragma once

#include <mpfr.h>

#include <string>

#include "machin/bigint.hpp"
#include "machin/precision.hpp"

namespace machin {

class HPReal;

namespace detail {
// Raw access for kernel implementations (and test oracles).
struct hp_access {
    static mpfr_ptr val(HPReal& x);
    static mpfr_srcptr val(const HPReal& x);
    static mpfr_ptr err(HPReal& x);
    static mpfr_srcptr err(const HPReal& x);
    static HPReal make(const PrecisionContext& ctx); // zero value, zero err
};
} // namespace detail

// High-precision real: an MPFR value at the context's working precision plus a
// tracked absolute-error upper bound (64-bit MPFR, always rounded upward).
// Arithmetic propagates bounds soundly: first-order terms, cross terms and the
// rounding ulp of each operation.  The per-context accuracy contract
// err_bound <= 10^-digits * max(1, |value|) is checked by kernel operations at
// their exits (see meets_contract), not by every elementary +/-/*//.
class HPReal {
public:
    explicit HPReal(const PrecisionContext& ctx);            // zero, exact
    HPReal(long v, const PrecisionContext& ctx);             // exact
    HPReal(const BigInt& v, const PrecisionContext& ctx);    // rounding ulp tracked
    HPReal(const BigRational& v, const PrecisionContext& ctx);
    HPReal(const std::string& decimal, const PrecisionContext& ctx);

    HPReal(const HPReal& o);
    HPReal(HPReal&& o) noexcept;
    HPReal& operator=(const HPReal& o);
    HPReal& operator=(HPReal&& o) noexcept;
    ~HPReal();

    const PrecisionContext& ctx() const { return ctx_; }
    int sign() const { return mpfr_sgn(v_); }
    bool is_zero() const { return mpfr_zero_p(v_) != 0; }
    bool err_is_zero() const { return mpfr_zero_p(err_) != 0; }
    // |value| > err_bound, i.e. the sign is certain.
    bool clears_zero() const;

    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }

    // Display helpers.
    std::string fixed(long decimals) const;     // "651.899"
    std::string sci(long sig_digits) const;     // "2.45e-01"
    // Integer part, '.', then `frac_digits` digits truncated toward zero.
    // Requires |value| >= 1.
    std::string digit_string(long frac_digits) const;

    HPReal round_to(const PrecisionContext& ctx) const;

    friend HPReal operator+(const HPReal& a, const HPReal& b);
    friend HPReal operator-(const HPReal& a, const HPReal& b);
    friend HPReal operator*(const HPReal& a, const HPReal& b);
    friend HPReal operator/(const HPReal& a, const HPReal& b);
    HPReal operator-() const;
    HPReal abs() const;
    HPReal mul_2si(long e) const;               // exact scaling by 2^e
    HPReal mul_int(const BigInt& m) const;
    HPReal div_int(const BigInt& d) const;

    bool meets_contract() const;
    void enforce_contract(const char* op) const; // throws PrecisionError

    friend int cmp(const HPReal& a, const HPReal& b);       // value comparison
    friend int cmp_abs_pow10(const HPReal& a, long e);      // sign of |value| - 10^e
    // |a - b| <= a.err + b.err (conservative: difference rounded away from zero).
    friend bool diff_within_err(const HPReal& a, const HPReal& b);
    // |a - b| < 10^e, on values.
    friend bool diff_below_pow10(const HPReal& a, const HPReal& b, long e);
    // err_bound <= 10^e, certified.
    friend bool err_below_pow10(const HPReal& a, long e);

private:
    friend struct detail::hp_access;
    void init(mpfr_prec_t bits);

    mpfr_t v_;
    mpfr_t err_;
    PrecisionContext ctx_;
};

inline bool operator<(const HPReal& a, const HPReal& b) { return cmp(a, b) < 0; }
inline bool operator>(const HPReal& a, const HPReal& b) { return cmp(a, b) > 0; }
inline bool operator<=(const HPReal& a, const HPReal& b) { return cmp(a, b) <= 0; }
inline bool operator>=(const HPReal& a, const HPReal& b) { return cmp(a, b) >= 0; }

} // namespace machin
