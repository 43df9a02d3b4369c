#include "machin/hpreal.hpp"

#include <cstdlib>

#include "hp_detail.hpp"

namespace machin {

using detail::ERR_PREC;
using detail::pow10_mpfr;
using detail::add_ulp;
using detail::abs_to;

mpfr_ptr detail::hp_access::val(HPReal& x) { return x.v_; }
mpfr_srcptr detail::hp_access::val(const HPReal& x) { return x.v_; }
mpfr_ptr detail::hp_access::err(HPReal& x) { return x.err_; }
mpfr_srcptr detail::hp_access::err(const HPReal& x) { return x.err_; }
HPReal detail::hp_access::make(const PrecisionContext& ctx) { return HPReal(ctx); }

void HPReal::init(mpfr_prec_t bits) {
    mpfr_init2(v_, bits);
    mpfr_init2(err_, ERR_PREC);
    mpfr_set_zero(err_, 1);
}

HPReal::HPReal(const PrecisionContext& ctx) : ctx_(ctx) {
    init(ctx.bits());
    mpfr_set_zero(v_, 1);
}

HPReal::HPReal(long v, const PrecisionContext& ctx) : ctx_(ctx) {
    init(ctx.bits());
    int inex = mpfr_set_si(v_, v, MPFR_RNDN);
    add_ulp(err_, v_, inex);
}

HPReal::HPReal(const BigInt& v, const PrecisionContext& ctx) : ctx_(ctx) {
    init(ctx.bits());
    int inex = mpfr_set_z(v_, v.get_mpz_t(), MPFR_RNDN);
    add_ulp(err_, v_, inex);
}

HPReal::HPReal(const BigRational& v, const PrecisionContext& ctx) : ctx_(ctx) {
    init(ctx.bits());
    int inex = mpfr_set_q(v_, v.raw().get_mpq_t(), MPFR_RNDN);
    add_ulp(err_, v_, inex);
}

HPReal::HPReal(const std::string& decimal, const PrecisionContext& ctx) : ctx_(ctx) {
    init(ctx.bits());
    int bad = mpfr_set_str(v_, decimal.c_str(), 10, MPFR_RNDN);
    if (bad != 0) throw ParseError("HPReal: bad decimal string '" + decimal + "'");
    // mpfr_set_str does not report inexactness; charge one ulp unconditionally.
    add_ulp(err_, v_, 1);
}

HPReal::HPReal(const HPReal& o) : ctx_(o.ctx_) {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_init2(err_, ERR_PREC);
    mpfr_set(v_, o.v_, MPFR_RNDN);
    mpfr_set(err_, o.err_, MPFR_RNDU);
}

HPReal::HPReal(HPReal&& o) noexcept : ctx_(o.ctx_) {
    mpfr_init2(v_, MPFR_PREC_MIN);
    mpfr_init2(err_, MPFR_PREC_MIN);
    mpfr_swap(v_, o.v_);
    mpfr_swap(err_, o.err_);
}

HPReal& HPReal::operator=(const HPReal& o) {
    if (this != &o) {
        mpfr_set_prec(v_, mpfr_get_prec(o.v_));
        mpfr_set(v_, o.v_, MPFR_RNDN);
        mpfr_set(err_, o.err_, MPFR_RNDU);
        ctx_ = o.ctx_;
    }
    return *this;
}

HPReal& HPReal::operator=(HPReal&& o) noexcept {
    if (this != &o) {
        mpfr_swap(v_, o.v_);
        mpfr_swap(err_, o.err_);
        ctx_ = o.ctx_;
    }
    return *this;
}

HPReal::~HPReal() {
    mpfr_clear(v_);
    mpfr_clear(err_);
}

bool HPReal::clears_zero() const {
    if (mpfr_zero_p(v_)) return false;
    return mpfr_cmpabs(v_, err_) > 0;
}

HPReal HPReal::round_to(const PrecisionContext& ctx) const {
    HPReal r(ctx);
    int inex = mpfr_set(r.v_, v_, MPFR_RNDN);
    mpfr_set(r.err_, err_, MPFR_RNDU);
    add_ulp(r.err_, r.v_, inex);
    return r;
}

HPReal operator+(const HPReal& a, const HPReal& b) {
    HPReal r(wider(a.ctx_, b.ctx_));
    int inex = mpfr_add(r.v_, a.v_, b.v_, MPFR_RNDN);
    mpfr_add(r.err_, a.err_, b.err_, MPFR_RNDU);
    add_ulp(r.err_, r.v_, inex);
    return r;
}

HPReal operator-(const HPReal& a, const HPReal& b) {
    HPReal r(wider(a.ctx_, b.ctx_));
    int inex = mpfr_sub(r.v_, a.v_, b.v_, MPFR_RNDN);
    mpfr_add(r.err_, a.err_, b.err_, MPFR_RNDU);
    add_ulp(r.err_, r.v_, inex);
    return r;
}

HPReal operator*(const HPReal& a, const HPReal& b) {
    HPReal r(wider(a.ctx_, b.ctx_));
    int inex = mpfr_mul(r.v_, a.v_, b.v_, MPFR_RNDN);
    // |a|*eb + |b|*ea + ea*eb, all rounded up.
    mpfr_t t, acc;
    mpfr_init2(t, ERR_PREC);
    mpfr_init2(acc, ERR_PREC);
    abs_to(t, a.v_, MPFR_RNDU);
    mpfr_mul(acc, t, b.err_, MPFR_RNDU);
    abs_to(t, b.v_, MPFR_RNDU);
    mpfr_mul(t, t, a.err_, MPFR_RNDU);
    mpfr_add(acc, acc, t, MPFR_RNDU);
    mpfr_mul(t, a.err_, b.err_, MPFR_RNDU);
    mpfr_add(acc, acc, t, MPFR_RNDU);
    mpfr_set(r.err_, acc, MPFR_RNDU);
    add_ulp(r.err_, r.v_, inex);
    mpfr_clear(t);
    mpfr_clear(acc);
    return r;
}

HPReal operator/(const HPReal& a, const HPReal& b) {
    if (mpfr_zero_p(b.v_)) {
        if (b.err_is_zero()) throw DomainError("HPReal: division by zero");
        throw PrecisionError("HPReal: divisor indistinguishable from zero");
    }
    if (mpfr_cmpabs(b.v_, b.err_) <= 0)
        throw PrecisionError("HPReal: divisor indistinguishable from zero");
    HPReal r(wider(a.ctx_, b.ctx_));
    int inex = mpfr_div(r.v_, a.v_, b.v_, MPFR_RNDN);
    // (ea + |r|*eb) / (|b| - eb), numerator up, denominator down.
    mpfr_t num, den, t;
    mpfr_init2(num, ERR_PREC);
    mpfr_init2(den, ERR_PREC);
    mpfr_init2(t, ERR_PREC);
    abs_to(t, r.v_, MPFR_RNDU);
    mpfr_mul(num, t, b.err_, MPFR_RNDU);
    mpfr_add(num, num, a.err_, MPFR_RNDU);
    abs_to(den, b.v_, MPFR_RNDD);
    mpfr_sub(den, den, b.err_, MPFR_RNDD);
    if (mpfr_sgn(den) <= 0) {
        mpfr_clear(num); mpfr_clear(den); mpfr_clear(t);
        throw PrecisionError("HPReal: divisor indistinguishable from zero");
    }
    mpfr_div(r.err_, num, den, MPFR_RNDU);
    add_ulp(r.err_, r.v_, inex);
    mpfr_clear(num);
    mpfr_clear(den);
    mpfr_clear(t);
    return r;
}

HPReal HPReal::operator-() const {
    HPReal r(*this);
    mpfr_neg(r.v_, r.v_, MPFR_RNDN); // exact
    return r;
}

HPReal HPReal::abs() const {
    HPReal r(*this);
    mpfr_abs(r.v_, r.v_, MPFR_RNDN); // exact
    return r;
}

HPReal HPReal::mul_2si(long e) const {
    HPReal r(*this);
    mpfr_mul_2si(r.v_, r.v_, e, MPFR_RNDN);   // exact
    mpfr_mul_2si(r.err_, r.err_, e, MPFR_RNDU);
    return r;
}

HPReal HPReal::mul_int(const BigInt& m) const {
    HPReal r(ctx_);
    int inex = mpfr_mul_z(r.v_, v_, m.get_mpz_t(), MPFR_RNDN);
    mpfr_t t;
    mpfr_init2(t, ERR_PREC);
    mpfr_set_z(t, m.get_mpz_t(), MPFR_RNDA); // magnitude rounded up
    mpfr_abs(t, t, MPFR_RNDN);
    mpfr_mul(r.err_, err_, t, MPFR_RNDU);
    add_ulp(r.err_, r.v_, inex);
    mpfr_clear(t);
    return r;
}

HPReal HPReal::div_int(const BigInt& d) const {
    if (d == 0) throw DomainError("HPReal: division by zero integer");
    HPReal r(ctx_);
    int inex = mpfr_div_z(r.v_, v_, d.get_mpz_t(), MPFR_RNDN);
    mpfr_t t;
    mpfr_init2(t, ERR_PREC);
    mpfr_set_z(t, d.get_mpz_t(), MPFR_RNDZ); // magnitude rounded down
    mpfr_abs(t, t, MPFR_RNDN);
    mpfr_div(r.err_, err_, t, MPFR_RNDU);
    add_ulp(r.err_, r.v_, inex);
    mpfr_clear(t);
    return r;
}

bool HPReal::meets_contract() const {
    // err <= 10^-digits * max(1, |v|); thresholds rounded down so the check
    // only certifies when genuinely inside the contract.
    mpfr_t t, m;
    mpfr_init2(t, ERR_PREC);
    mpfr_init2(m, ERR_PREC);
    pow10_mpfr(t, -ctx_.digits, MPFR_RNDD);
    abs_to(m, v_, MPFR_RNDD);
    if (mpfr_cmp_ui(m, 1) < 0) mpfr_set_ui(m, 1, MPFR_RNDN);
    mpfr_mul(t, t, m, MPFR_RNDD);
    bool ok = mpfr_cmp(err_, t) <= 0;
    mpfr_clear(t);
    mpfr_clear(m);
    return ok;
}

void HPReal::enforce_contract(const char* op) const {
    if (!meets_contract())
        throw PrecisionError(std::string(op) + ": error bound exceeds 10^-" +
                             std::to_string(ctx_.digits) + " contract");
}

std::string HPReal::fixed(long decimals) const {
    char* s = nullptr;
    mpfr_asprintf(&s, "%.*R*f", static_cast<int>(decimals), MPFR_RNDN, v_);
    std::string out(s);
    mpfr_free_str(s);
    return out;
}

std::string HPReal::sci(long sig_digits) const {
    char* s = nullptr;
    mpfr_asprintf(&s, "%.*R*e", static_cast<int>(sig_digits > 0 ? sig_digits - 1 : 0),
                  MPFR_RNDN, v_);
    std::string out(s);
    mpfr_free_str(s);
    return out;
}

std::string HPReal::digit_string(long frac_digits) const {
    if (mpfr_cmpabs_ui(v_, 1) < 0)
        throw DomainError("digit_string: |value| must be >= 1");
    mpfr_exp_t e;
    char* probe = mpfr_get_str(nullptr, &e, 10, 2, v_, MPFR_RNDZ);
    mpfr_free_str(probe);
    long n = static_cast<long>(e) + frac_digits;
    long avail = static_cast<long>(static_cast<double>(mpfr_get_prec(v_)) / 3.3219280948873626) - 2;
    if (n > avail)
        throw PrecisionError("digit_string: requested digits exceed working precision");
    char* s = mpfr_get_str(nullptr, &e, 10, static_cast<size_t>(n), v_, MPFR_RNDZ);
    std::string digits(s);
    mpfr_free_str(s);
    std::string sign;
    if (!digits.empty() && digits[0] == '-') {
        sign = "-";
        digits.erase(0, 1);
    }
    std::string out = sign + digits.substr(0, static_cast<size_t>(e));
    if (frac_digits > 0) out += "." + digits.substr(static_cast<size_t>(e));
    return out;
}

int cmp(const HPReal& a, const HPReal& b) { return mpfr_cmp(a.v_, b.v_); }

int cmp_abs_pow10(const HPReal& a, long e) {
    mpfr_t t;
    mpfr_init2(t, 96);
    pow10_mpfr(t, e, MPFR_RNDN);
    int c = mpfr_cmpabs(a.v_, t);
    mpfr_clear(t);
    return c;
}

bool diff_within_err(const HPReal& a, const HPReal& b) {
    mpfr_t d, s;
    mpfr_prec_t p = std::max(mpfr_get_prec(a.v_), mpfr_get_prec(b.v_)) + 32;
    mpfr_init2(d, p);
    mpfr_sub(d, a.v_, b.v_, MPFR_RNDA);
    mpfr_init2(s, ERR_PREC);
    mpfr_add(s, a.err_, b.err_, MPFR_RNDU);
    bool ok = mpfr_cmpabs(d, s) <= 0;
    mpfr_clear(d);
    mpfr_clear(s);
    return ok;
}

bool diff_below_pow10(const HPReal& a, const HPReal& b, long e) {
    mpfr_t d, t;
    mpfr_prec_t p = std::max(mpfr_get_prec(a.v_), mpfr_get_prec(b.v_)) + 32;
    mpfr_init2(d, p);
    mpfr_sub(d, a.v_, b.v_, MPFR_RNDA);
    mpfr_init2(t, 96);
    pow10_mpfr(t, e, MPFR_RNDD);
    bool ok = mpfr_cmpabs(d, t) < 0;
    mpfr_clear(d);
    mpfr_clear(t);
    return ok;
}

bool err_below_pow10(const HPReal& a, long e) {
    mpfr_t t;
    mpfr_init2(t, 96);
    pow10_mpfr(t, e, MPFR_RNDD);
    bool ok = mpfr_cmp(a.err_, t) <= 0;
    mpfr_clear(t);
    return ok;
}

} // namespace machin
