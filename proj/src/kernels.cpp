#include "machin/kernels.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <string>

#include "hp_detail.hpp"

namespace machin {

using detail::ERR_PREC;
using detail::pow10_mpfr;
using detail::add_ulp;
using detail::abs_to;
using detail::hp_access;

namespace {

// t (64-bit) = upper bound on |true x| = |value| + err, rounded up.
void hi_abs(mpfr_t t, const HPReal& x) {
    abs_to(t, hp_access::val(x), MPFR_RNDU);
    mpfr_add(t, t, hp_access::err(x), MPFR_RNDU);
}

// t (64-bit) = lower bound on |true x| = |value| - err, clamped at 0.
void lo_abs(mpfr_t t, const HPReal& x) {
    abs_to(t, hp_access::val(x), MPFR_RNDD);
    mpfr_sub(t, t, hp_access::err(x), MPFR_RNDD);
    if (mpfr_sgn(t) < 0) mpfr_set_zero(t, 1);
}

void bump_err(HPReal& x, mpfr_srcptr extra) {
    mpfr_ptr e = hp_access::err(x);
    mpfr_add(e, e, extra, MPFR_RNDU);
}

long series_cap(const PrecisionContext& ctx) { return 200 * ctx.work_digits() + 1000; }

// Lower bound on pi at 64 bits, for conservative domain gates.
void pi_lo(mpfr_t t) { mpfr_const_pi(t, MPFR_RNDD); }

} // namespace

// ---------------------------------------------------------------------------
// Square root
// ---------------------------------------------------------------------------

HPReal sqrt_hp(const HPReal& x, const PrecisionContext& ctx) {
    mpfr_srcptr xv = hp_access::val(x);
    mpfr_srcptr xe = hp_access::err(x);

    HPReal r = hp_access::make(ctx);
    mpfr_ptr rv = hp_access::val(r);
    mpfr_ptr re = hp_access::err(r);

    if (mpfr_sgn(xv) < 0) {
        if (mpfr_cmpabs(xv, xe) > 0)
            throw DomainError("sqrt_hp: input is negative beyond its error bound");
        // True value may still be >= 0; the best enclosure is [0, sqrt(v + e)].
        mpfr_t t;
        mpfr_init2(t, ERR_PREC);
        mpfr_add(t, xv, xe, MPFR_RNDU);
        if (mpfr_sgn(t) < 0) mpfr_set_zero(t, 1);
        mpfr_sqrt(t, t, MPFR_RNDU);
        mpfr_set(re, t, MPFR_RNDU);
        mpfr_clear(t);
        return r;
    }

    int inex = mpfr_sqrt(rv, xv, MPFR_RNDN);

    if (mpfr_zero_p(xv) || mpfr_cmpabs(xv, xe) <= 0) {
        // Interval reaches 0: |sqrt(t) - sqrt(v)| <= sqrt(v + e) on [0, v + e].
        mpfr_t t;
        mpfr_init2(t, ERR_PREC);
        mpfr_add(t, xv, xe, MPFR_RNDU);
        mpfr_sqrt(t, t, MPFR_RNDU);
        mpfr_set(re, t, MPFR_RNDU);
        add_ulp(re, rv, inex);
        mpfr_clear(t);
        return r;
    }

    // Regular case: |sqrt(t) - sqrt(v)| <= e / (sqrt(v - e) + sqrt(v)).
    mpfr_t lo, s2, den;
    mpfr_init2(lo, ERR_PREC);
    mpfr_init2(s2, ERR_PREC);
    mpfr_init2(den, ERR_PREC);
    mpfr_sub(lo, xv, xe, MPFR_RNDD);
    mpfr_sqrt(lo, lo, MPFR_RNDD);
    mpfr_sqrt(s2, xv, MPFR_RNDD);
    mpfr_add(den, lo, s2, MPFR_RNDD);
    mpfr_div(re, xe, den, MPFR_RNDU);
    add_ulp(re, rv, inex);
    mpfr_clears(lo, s2, den, static_cast<mpfr_ptr>(nullptr));

    r.enforce_contract("sqrt_hp");
    return r;
}

HPReal sqrt_hp(const BigRational& x, const PrecisionContext& ctx) {
    if (x.sign() < 0) throw DomainError("sqrt_hp: negative rational input");
    return sqrt_hp(HPReal(x, ctx), ctx);
}

// ---------------------------------------------------------------------------
// Arctangent series
// ---------------------------------------------------------------------------

HPReal arctan_maclaurin(const HPReal& x, const PrecisionContext& ctx) {
    mpfr_srcptr xv = hp_access::val(x);
    {
        mpfr_t one;
        mpfr_init2(one, ERR_PREC);
        mpfr_set_ui(one, 1, MPFR_RNDN);
        int c = mpfr_cmpabs(xv, one);
        mpfr_clear(one);
        if (c >= 0) throw DomainError("arctan_maclaurin: |x| >= 1 is outside the convergence domain");
    }
    if (x.is_zero()) return hp_access::make(ctx);

    const PrecisionContext wctx = wider(x.ctx(), ctx);
    const long wd = ctx.work_digits();

    HPReal sum = x.round_to(wctx);
    HPReal term = sum;
    HPReal neg_x2 = -(sum * sum);

    const long cap = series_cap(ctx);
    bool done = false;
    for (long n = 1; n <= cap; ++n) {
        term = term * neg_x2;
        HPReal next = term.div_int(BigInt(2 * n + 1));
        if (cmp_abs_pow10(next, -wd) < 0) {
            // Alternating with decreasing magnitude: remainder <= first omitted term.
            mpfr_t tail;
            mpfr_init2(tail, ERR_PREC);
            hi_abs(tail, next);
            bump_err(sum, tail);
            mpfr_clear(tail);
            done = true;
            break;
        }
        sum = sum + next;
    }
    if (!done) throw ConvergenceError("arctan_maclaurin: series did not reach the stop threshold");

    HPReal r = sum.round_to(ctx);
    r.enforce_contract("arctan_maclaurin");
    return r;
}

HPReal arctan_maclaurin(const BigRational& x, const PrecisionContext& ctx) {
    return arctan_maclaurin(HPReal(x, ctx), ctx);
}

HPReal arctan_euler(const HPReal& x, const PrecisionContext& ctx) {
    if (x.is_zero()) return hp_access::make(ctx);

    const PrecisionContext wctx = wider(x.ctx(), ctx);
    const long wd = ctx.work_digits();

    HPReal xr = x.round_to(wctx);
    HPReal x2 = xr * xr;
    HPReal den0 = HPReal(1, wctx) + x2;
    HPReal y = x2 / den0;
    HPReal term = xr / den0;
    HPReal sum = term;

    // Upper bound on the per-term ratio y (needed to close the geometric tail).
    mpfr_t y_hi, one_minus;
    mpfr_init2(y_hi, ERR_PREC);
    mpfr_init2(one_minus, ERR_PREC);
    hi_abs(y_hi, y);
    mpfr_ui_sub(one_minus, 1, y_hi, MPFR_RNDD);
    if (mpfr_sgn(one_minus) <= 0) {
        mpfr_clears(y_hi, one_minus, static_cast<mpfr_ptr>(nullptr));
        throw PrecisionError("arctan_euler: cannot bound the series ratio below 1");
    }

    const long cap = series_cap(ctx);
    bool done = false;
    for (long n = 0; n <= cap; ++n) {
        term = (term * y).mul_int(BigInt(2 * n + 2)).div_int(BigInt(2 * n + 3));
        if (cmp_abs_pow10(term, -wd) < 0) {
            // All terms share one sign; remainder <= |term| / (1 - y).
            mpfr_t tail;
            mpfr_init2(tail, ERR_PREC);
            hi_abs(tail, term);
            mpfr_div(tail, tail, one_minus, MPFR_RNDU);
            bump_err(sum, tail);
            mpfr_clear(tail);
            done = true;
            break;
        }
        sum = sum + term;
    }
    mpfr_clears(y_hi, one_minus, static_cast<mpfr_ptr>(nullptr));
    if (!done) throw ConvergenceError("arctan_euler: series did not reach the stop threshold");

    HPReal r = sum.round_to(ctx);
    r.enforce_contract("arctan_euler");
    return r;
}

HPReal arctan_euler(const BigRational& x, const PrecisionContext& ctx) {
    return arctan_euler(HPReal(x, ctx), ctx);
}

HPReal arctan_gh(const HPReal& x, const PrecisionContext& ctx) {
    if (x.is_zero()) throw DomainError("arctan_gh: x = 0 is outside the domain");
    if (!x.clears_zero())
        throw PrecisionError("arctan_gh: input does not clear zero within its error bound");

    const PrecisionContext wctx = wider(x.ctx(), ctx);
    const long wd = ctx.work_digits();

    HPReal xr = x.round_to(wctx);
    HPReal inv = HPReal(1, wctx) / xr;          // 1/x
    HPReal d = inv.mul_2si(2);                  // 4/x
    HPReal c = HPReal(1, wctx) - d * inv;       // 1 - 4/x^2
    HPReal g = inv.mul_2si(1);                  // 2/x
    HPReal h(1, wctx);

    // Decay ratio rho = x^2 / (x^2 + 4) < 1, bounded above with outward rounding.
    mpfr_t rho_hi, one_minus;
    mpfr_init2(rho_hi, ERR_PREC);
    mpfr_init2(one_minus, ERR_PREC);
    {
        mpfr_t num, den;
        mpfr_init2(num, ERR_PREC);
        mpfr_init2(den, ERR_PREC);
        hi_abs(num, x);
        mpfr_sqr(num, num, MPFR_RNDU);
        lo_abs(den, x);
        mpfr_sqr(den, den, MPFR_RNDD);
        mpfr_add_ui(den, den, 4, MPFR_RNDD);
        mpfr_div(rho_hi, num, den, MPFR_RNDU);
        mpfr_clears(num, den, static_cast<mpfr_ptr>(nullptr));
    }
    mpfr_ui_sub(one_minus, 1, rho_hi, MPFR_RNDD);
    if (mpfr_sgn(one_minus) <= 0) {
        mpfr_clears(rho_hi, one_minus, static_cast<mpfr_ptr>(nullptr));
        throw PrecisionError("arctan_gh: cannot bound the term decay ratio below 1");
    }

    // Stop on the term envelope 1/((2n-1)|w_n|), w_n = g_n + i h_n: the terms
    // themselves are Re(w_n)/((2n-1)|w_n|^2) and may dip below it without the
    // later terms being small, while |w_{n+1}| = |w_n|/rho exactly, so the
    // envelope decays geometrically and closes the tail.
    mpfr_t thr, env;
    mpfr_init2(thr, ERR_PREC);
    mpfr_init2(env, ERR_PREC);
    pow10_mpfr(thr, -wd, MPFR_RNDD);

    HPReal sum = hp_access::make(wctx);
    const long cap = series_cap(ctx);
    bool done = false;
    for (long n = 1; n <= cap; ++n) {
        HPReal w2 = g * g + h * h;
        lo_abs(env, w2);
        mpfr_sqrt(env, env, MPFR_RNDD);
        mpfr_mul_ui(env, env, static_cast<unsigned long>(2 * n - 1), MPFR_RNDD);
        if (mpfr_sgn(env) <= 0) break; // cannot bound |w|; treated as non-convergence
        mpfr_ui_div(env, 1, env, MPFR_RNDU);
        if (mpfr_cmp(env, thr) < 0) {
            // remainder <= envelope * (1 + rho + rho^2 + ...) = envelope / (1 - rho)
            mpfr_t tail;
            mpfr_init2(tail, ERR_PREC);
            mpfr_div(tail, env, one_minus, MPFR_RNDU);
            bump_err(sum, tail);
            mpfr_clear(tail);
            done = true;
            break;
        }
        sum = sum + (g / w2).div_int(BigInt(2 * n - 1));
        HPReal gn = c * g + d * h;
        HPReal hn = c * h - d * g;
        g = gn;
        h = hn;
    }
    mpfr_clears(rho_hi, one_minus, thr, env, static_cast<mpfr_ptr>(nullptr));
    if (!done) throw ConvergenceError("arctan_gh: series did not reach the stop threshold");

    HPReal r = sum.mul_2si(1).round_to(ctx);
    r.enforce_contract("arctan_gh");
    return r;
}

HPReal arctan_gh(const BigRational& x, const PrecisionContext& ctx) {
    if (x.is_zero()) throw DomainError("arctan_gh: x = 0 is outside the domain");
    return arctan_gh(HPReal(x, ctx), ctx);
}

// ---------------------------------------------------------------------------
// Bernoulli numbers and the tangent series
// ---------------------------------------------------------------------------

BigRational bernoulli(unsigned long n) {
    static std::mutex memo_mutex;
    static std::map<unsigned long, BigRational> memo;

    std::lock_guard<std::mutex> lock(memo_mutex);
    auto it = memo.find(n);
    if (it != memo.end()) return it->second;

    // B_n = sum_{m=0..n} 1/(m+1) * sum_{l=0..m} (-1)^l C(m,l) l^n.
    // The inner sum is an integer; only the outer accumulation is rational.
    mpq_class acc(0);
    mpz_class inner, binom, lpow;
    for (unsigned long m = 0; m <= n; ++m) {
        inner = 0;
        for (unsigned long l = 0; l <= m; ++l) {
            mpz_bin_uiui(binom.get_mpz_t(), m, l);
            mpz_ui_pow_ui(lpow.get_mpz_t(), l, n); // 0^0 == 1
            binom *= lpow;
            if (l % 2 == 0) inner += binom;
            else inner -= binom;
        }
        mpq_class frac(inner, mpz_class(m + 1));
        frac.canonicalize();
        acc += frac;
    }

    BigRational result(BigInt(acc.get_num()), BigInt(acc.get_den()));
    memo.emplace(n, result);
    return result;
}

namespace {

// n-th coefficient of the tangent Maclaurin series:
//   tan x = sum_{n>=1} c_n x^(2n-1),  c_n = 4^n (4^n - 1) |B_{2n}| / (2n)!.
// All c_n are positive.  Recomputed from the memoized Bernoulli numbers;
// the arithmetic on top of the memo is a few integer ops and stays cheap.
BigRational tan_series_coefficient(unsigned long n) {
    BigRational b = bernoulli(2 * n).abs();
    mpz_class p4, fact;
    mpz_ui_pow_ui(p4.get_mpz_t(), 4, n);
    mpz_fac_ui(fact.get_mpz_t(), 2 * n);
    BigInt num = BigInt(b.num()) * BigInt(p4) * BigInt(p4 - 1);
    BigInt den = BigInt(b.den()) * BigInt(fact);
    return BigRational(num, den);
}

// Geometric tail of the tangent series, from c_m <= 2.5 (2/pi)^(2m):
//   sum_{m>T} c_m x^(2m-1) <= factor * s^(T+1),
//   s = (2 x_hi / pi)^2,  factor = 2.5 / ((1 - s) x_lo).
// Construction throws when the argument is too close to pi/2 (s >= 1) or does
// not clear zero; bound() itself cannot fail.
class TanSeriesTail {
public:
    TanSeriesTail(const HPReal& x) {
        mpfr_init2(s_, ERR_PREC);
        mpfr_init2(factor_, ERR_PREC);
        mpfr_t x_hi, x_lo, pl;
        mpfr_init2(x_hi, ERR_PREC);
        mpfr_init2(x_lo, ERR_PREC);
        mpfr_init2(pl, ERR_PREC);
        hi_abs(x_hi, x);
        lo_abs(x_lo, x);
        pi_lo(pl);
        mpfr_mul_2ui(s_, x_hi, 1, MPFR_RNDU);
        mpfr_div(s_, s_, pl, MPFR_RNDU);
        mpfr_sqr(s_, s_, MPFR_RNDU);
        mpfr_ui_sub(factor_, 1, s_, MPFR_RNDD); // reuse as 1-s scratch
        bool bad_pole = mpfr_sgn(factor_) <= 0;
        bool bad_zero = mpfr_sgn(x_lo) <= 0;
        if (!bad_pole && !bad_zero) {
            mpfr_mul(factor_, factor_, x_lo, MPFR_RNDD);
            mpfr_d_div(factor_, 2.5, factor_, MPFR_RNDU);
        }
        mpfr_clears(x_hi, x_lo, pl, static_cast<mpfr_ptr>(nullptr));
        if (bad_pole || bad_zero) {
            mpfr_clears(s_, factor_, static_cast<mpfr_ptr>(nullptr));
            throw PrecisionError(bad_pole
                ? "tangent series: argument too close to pi/2 for a tail bound"
                : "tangent series: argument does not clear zero; tail bound unavailable");
        }
    }
    ~TanSeriesTail() { mpfr_clears(s_, factor_, static_cast<mpfr_ptr>(nullptr)); }
    TanSeriesTail(const TanSeriesTail&) = delete;
    TanSeriesTail& operator=(const TanSeriesTail&) = delete;

    // Upper bound on the remainder after the first `terms` terms.
    void bound(mpfr_t out, unsigned long terms) const {
        mpfr_pow_ui(out, s_, terms + 1, MPFR_RNDU);
        mpfr_mul(out, out, factor_, MPFR_RNDU);
    }

private:
    mpfr_t s_, factor_;
};

// Hard domain gate shared by the tangent evaluators: the stored value must
// sit strictly inside (-pi/2, pi/2) with a conservative decimal threshold.
void check_tan_domain(const HPReal& x, const char* op) {
    mpfr_t lim;
    mpfr_init2(lim, ERR_PREC);
    mpfr_set_str(lim, "1.5707963267", 10, MPFR_RNDD);
    int c = mpfr_cmpabs(hp_access::val(x), lim);
    mpfr_clear(lim);
    if (c >= 0) throw DomainError(std::string(op) + ": |x| >= 1.5707963267 is outside the domain");
}

} // namespace

HPReal tan_bernoulli(const HPReal& x, long terms, const PrecisionContext& ctx) {
    if (terms < 1) throw DomainError("tan_bernoulli: terms must be >= 1");
    check_tan_domain(x, "tan_bernoulli");

    const PrecisionContext wctx = wider(x.ctx(), ctx);

    if (x.is_zero()) {
        HPReal r = hp_access::make(ctx);
        mpfr_ptr re = hp_access::err(r);
        mpfr_mul_2ui(re, hp_access::err(x), 1, MPFR_RNDU); // |tan t| <= 2|t| near 0
        return r;
    }

    TanSeriesTail tail_bound(x);

    HPReal xr = x.round_to(wctx);
    HPReal x2 = xr * xr;
    HPReal pw = xr;
    HPReal sum = hp_access::make(wctx);
    for (long n = 1; n <= terms; ++n) {
        BigRational c = tan_series_coefficient(static_cast<unsigned long>(n));
        sum = sum + pw.mul_int(c.num()).div_int(c.den());
        if (n < terms) pw = pw * x2;
    }

    // The returned error covers rounding plus the analytic truncation
    // remainder, so for small `terms` it deliberately exceeds the usual
    // 10^-digits contract: the caller asked for a truncated polynomial.
    mpfr_t tail;
    mpfr_init2(tail, ERR_PREC);
    tail_bound.bound(tail, static_cast<unsigned long>(terms));
    bump_err(sum, tail);
    mpfr_clear(tail);

    return sum.round_to(wctx);
}

HPReal tan_doubling(const HPReal& x, long n, const PrecisionContext& ctx) {
    if (n < 0) throw DomainError("tan_doubling: n must be >= 0");

    const PrecisionContext wctx = wider(x.ctx(), ctx);

    if (x.is_zero()) {
        HPReal r = hp_access::make(wctx);
        mpfr_ptr re = hp_access::err(r);
        mpfr_set(re, hp_access::err(x), MPFR_RNDU);
        if (n + 1 < 1000000) mpfr_mul_2ui(re, re, static_cast<unsigned long>(n + 1), MPFR_RNDU);
        return r;
    }

    mpfr_t x_hi;
    mpfr_init2(x_hi, ERR_PREC);
    hi_abs(x_hi, x);
    int too_big = mpfr_cmp_d(x_hi, 0.8) > 0;
    mpfr_clear(x_hi);
    if (too_big) throw DomainError("tan_doubling: seed argument must satisfy |x| <= 0.8");

    // Cubic seed: tan x = x + x^3/3 + O(x^5), |remainder| <= 0.2 |x|^5 on [-0.8, 0.8].
    HPReal xr = x.round_to(wctx);
    HPReal f = xr + (xr * xr * xr).div_int(BigInt(3));
    {
        mpfr_t seed_err;
        mpfr_init2(seed_err, ERR_PREC);
        hi_abs(seed_err, x);
        mpfr_pow_ui(seed_err, seed_err, 5, MPFR_RNDU);
        mpfr_mul_d(seed_err, seed_err, 0.2, MPFR_RNDU);
        bump_err(f, seed_err);
        mpfr_clear(seed_err);
    }

    HPReal one(1, wctx);
    for (long j = 0; j < n; ++j) {
        HPReal den = one - f * f;
        if (cmp_abs_pow10(den, -ctx.digits) < 0)
            throw PoleProximityError("tan_doubling: doubling step passed within 10^-" +
                                     std::to_string(ctx.digits) + " of a pole");
        f = f.mul_2si(1) / den;
    }
    // The seed truncation is part of the reported error, so the result is
    // honestly bounded but not held to the 10^-digits contract.
    return f;
}

HPReal tan_hp(const HPReal& x, const PrecisionContext& ctx) {
    const PrecisionContext wctx = wider(x.ctx(), ctx);
    const long D = wctx.work_digits();

    if (x.is_zero()) {
        HPReal r = hp_access::make(wctx);
        mpfr_ptr re = hp_access::err(r);
        mpfr_mul_2ui(re, hp_access::err(x), 1, MPFR_RNDU);
        return r;
    }
    check_tan_domain(x, "tan_hp");

    // Halve the argument (exactly) until it is at most ~10^-e_t, evaluate the
    // Maclaurin series there, then double back with the tangent duplication
    // formula.  e_t balances series length against doubling count.
    const long e_t = std::max(2L, (D + 199) / 200);
    long m = 0;
    {
        long ex = static_cast<long>(mpfr_get_exp(hp_access::val(x)));
        long target = static_cast<long>(static_cast<double>(e_t) * 3.3219280948873626) + 1;
        m = std::max(0L, ex + target);
    }
    HPReal y = x.round_to(wctx).mul_2si(-m);

    // Series threshold is relative to |y|: the doubling phase scales absolute
    // errors back up by ~2^m, so only relative accuracy at the seed survives.
    long t_exp;
    {
        long ey = static_cast<long>(mpfr_get_exp(hp_access::val(y)));
        t_exp = -(D + 8) + static_cast<long>(static_cast<double>(ey) * 0.30102999566398) - 1;
    }

    TanSeriesTail tail_bound(y);

    HPReal y2 = y * y;
    HPReal pw = y;
    HPReal f = hp_access::make(wctx);
    bool done = false;
    for (unsigned long n = 1; n <= 2000; ++n) {
        BigRational c = tan_series_coefficient(n);
        HPReal term = pw.mul_int(c.num()).div_int(c.den());
        if (cmp_abs_pow10(term, t_exp) < 0) {
            mpfr_t tail;
            mpfr_init2(tail, ERR_PREC);
            tail_bound.bound(tail, n - 1);
            bump_err(f, tail);
            mpfr_clear(tail);
            done = true;
            break;
        }
        f = f + term;
        pw = pw * y2;
    }
    if (!done) throw ConvergenceError("tan_hp: tangent series did not reach the stop threshold");

    HPReal one(1, wctx);
    for (long j = 0; j < m; ++j) {
        HPReal den = one - f * f;
        if (cmp_abs_pow10(den, -wctx.digits) < 0)
            throw PoleProximityError("tan_hp: doubling step passed within 10^-" +
                                     std::to_string(wctx.digits) + " of a pole");
        f = f.mul_2si(1) / den;
    }
    return f;
}

// ---------------------------------------------------------------------------
// Decimal logarithm
// ---------------------------------------------------------------------------

HPReal log10_abs(const HPReal& x, const PrecisionContext& ctx) {
    if (x.is_zero()) throw DomainError("log10_abs: log of zero");
    if (!x.clears_zero())
        throw PrecisionError("log10_abs: value does not clear zero within its error bound");

    HPReal r = hp_access::make(ctx);
    mpfr_ptr rv = hp_access::val(r);
    mpfr_ptr re = hp_access::err(r);

    mpfr_t av;
    mpfr_init2(av, mpfr_get_prec(hp_access::val(x)));
    mpfr_abs(av, hp_access::val(x), MPFR_RNDN); // exact
    int inex = mpfr_log10(rv, av, MPFR_RNDN);
    mpfr_clear(av);

    // |d log10(t)/dt| = 1/(t ln 10); bound with the smallest |t| in range.
    mpfr_t lo, ln10;
    mpfr_init2(lo, ERR_PREC);
    mpfr_init2(ln10, ERR_PREC);
    lo_abs(lo, x);
    mpfr_set_ui(ln10, 10, MPFR_RNDN);
    mpfr_log(ln10, ln10, MPFR_RNDD);
    mpfr_mul(lo, lo, ln10, MPFR_RNDD);
    if (mpfr_sgn(lo) <= 0) {
        mpfr_clears(lo, ln10, static_cast<mpfr_ptr>(nullptr));
        throw PrecisionError("log10_abs: precision too low to bound the derivative");
    }
    mpfr_div(re, hp_access::err(x), lo, MPFR_RNDU);
    add_ulp(re, rv, inex);
    mpfr_clears(lo, ln10, static_cast<mpfr_ptr>(nullptr));

    r.enforce_contract("log10_abs");
    return r;
}

namespace {

// log10 of a positive integer.  Large integers are reduced to a mantissa of
// ~work_digits decimal digits plus an exact power-of-ten shift, so the cost
// never scales with the full digit count of z.
HPReal log10_mpz(const mpz_class& z, const PrecisionContext& ctx) {
    if (mpz_sgn(z.get_mpz_t()) <= 0) throw DomainError("log10_abs: log of a non-positive integer");
    if (mpz_cmp_ui(z.get_mpz_t(), 1) == 0) return hp_access::make(ctx);

    const long wd = ctx.work_digits();
    long s = static_cast<long>(mpz_sizeinbase(z.get_mpz_t(), 10));
    if (s <= wd + 4) return log10_abs(HPReal(BigInt(z), ctx.plus(4)), ctx);

    long shift = s - (wd + 4);
    mpz_class p10, q;
    mpz_ui_pow_ui(p10.get_mpz_t(), 10, static_cast<unsigned long>(shift));
    mpz_tdiv_q(q.get_mpz_t(), z.get_mpz_t(), p10.get_mpz_t());

    PrecisionContext ictx = ctx.plus(4);
    HPReal mant(BigInt(q), ictx);
    {
        // True z / 10^shift lies in [q, q+1); widen the bound by 1.
        mpfr_t one;
        mpfr_init2(one, ERR_PREC);
        mpfr_set_ui(one, 1, MPFR_RNDU);
        bump_err(mant, one);
        mpfr_clear(one);
    }
    return log10_abs(mant, ctx) + HPReal(BigInt(shift), ctx);
}

} // namespace

HPReal log10_abs(const BigRational& x, const PrecisionContext& ctx) {
    if (x.is_zero()) throw DomainError("log10_abs: log of zero");

    mpz_class num = ::abs(x.num());
    mpz_class den = x.den();

    // Internal boost sized to the magnitude of the logs themselves, so the
    // final difference still meets the contract at ctx.
    long s = std::max(mpz_sizeinbase(num.get_mpz_t(), 10), mpz_sizeinbase(den.get_mpz_t(), 10));
    long extra = static_cast<long>(std::to_string(s).size()) + 2;
    PrecisionContext ictx = ctx.plus(extra);

    HPReal r = (log10_mpz(num, ictx) - log10_mpz(den, ictx)).round_to(ctx);
    r.enforce_contract("log10_abs");
    return r;
}

} // namespace machin
