#include "machin/quad_pi.hpp"

#include <algorithm>

#include "machin/kernels.hpp"

#include "hp_detail.hpp"

namespace machin {

namespace {

PrecisionContext step_context(long n, const PrecisionContext& base) {
    if (n + 1 > 24) throw PrecisionError("quad_step: precision schedule past 2^25 digits");
    long scheduled = (1L << (n + 1)) + 10;
    long digits = std::max(scheduled, base.work_digits());
    return PrecisionContext(digits, 10);
}

} // namespace

QuadState quad_init(long k, const PrecisionContext& base) {
    if (k < 1) throw DomainError("quad_init: k must be >= 1");
    if (k > 62) throw DomainError("quad_init: k must be <= 62");
    PrecisionContext c0 = step_context(0, base);
    return QuadState{k, HPReal(1, c0).mul_2si(k), 0, base};
}

QuadState quad_step(const QuadState& s) {
    long n1 = s.n + 1;
    PrecisionContext wctx = step_context(n1, s.ctx);

    HPReal theta = s.theta.round_to(wctx);
    HPReal inv = HPReal(1, wctx) / theta;
    HPReal t = tan_hp(inv.mul_2si(s.k - 1), wctx);
    HPReal denom = inv + (HPReal(1, wctx) - t).mul_2si(-s.k);
    if (!denom.clears_zero())
        throw PrecisionError("quad_step: iteration denominator does not clear zero");
    return QuadState{s.k, HPReal(1, wctx) / denom, n1, s.ctx};
}

HPReal quad_estimate(const QuadState& s) {
    return (HPReal(1, s.theta.ctx()) / s.theta).mul_2si(s.k + 1);
}

std::vector<HPReal> quad_sequence(long k, long iterations, const PrecisionContext& base) {
    if (iterations < 1) throw DomainError("quad_sequence: iterations must be >= 1");
    std::vector<HPReal> estimates;
    estimates.reserve(static_cast<size_t>(iterations));
    QuadState s = quad_init(k, base);
    for (long i = 0; i < iterations; ++i) {
        s = quad_step(s);
        estimates.push_back(quad_estimate(s));
    }
    return estimates;
}

HPReal pi_quadratic(long k, long iterations) {
    return pi_quadratic(k, iterations, PrecisionContext(30, 10));
}

HPReal pi_quadratic(long k, long iterations, const PrecisionContext& base) {
    if (iterations < 1) throw DomainError("pi_quadratic: iterations must be >= 1");
    QuadState s = quad_init(k, base);
    for (long i = 0; i < iterations; ++i) s = quad_step(s);
    return quad_estimate(s);
}

long correct_digits(const HPReal& approx, const HPReal& reference) {
    if (reference.ctx().digits <= approx.ctx().digits)
        throw PrecisionError("correct_digits: reference must be more precise than the approximation");

    HPReal diff = (approx - reference).abs();
    if (diff.is_zero())
        throw PrecisionError("correct_digits: reference does not resolve the difference");

    // The reference's own error must be negligible against the difference.
    mpfr_t quad_ref_err;
    mpfr_init2(quad_ref_err, detail::ERR_PREC);
    mpfr_mul_ui(quad_ref_err, detail::hp_access::err(reference), 4, MPFR_RNDU);
    int unresolved = mpfr_cmpabs(detail::hp_access::val(diff), quad_ref_err) <= 0;
    mpfr_clear(quad_ref_err);
    if (unresolved)
        throw PrecisionError("correct_digits: reference does not resolve the difference");

    mpfr_t l;
    mpfr_init2(l, detail::ERR_PREC);
    mpfr_log10(l, detail::hp_access::val(diff), MPFR_RNDN);
    mpfr_neg(l, l, MPFR_RNDN);
    mpfr_floor(l, l);
    long digits = mpfr_get_si(l, MPFR_RNDN);
    mpfr_clear(l);
    return std::max(digits, 0L);
}

} // namespace machin
