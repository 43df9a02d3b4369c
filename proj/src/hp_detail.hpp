#pragma once

// Internal helpers shared by the HPReal implementation and the kernels.
// Not installed; do not include from public headers.

#include <mpfr.h>

namespace machin::detail {

constexpr mpfr_prec_t ERR_PREC = 64;

// 10^e into out, rounded as requested.
inline void pow10_mpfr(mpfr_t out, long e, mpfr_rnd_t rnd) {
    if (e >= 0) {
        mpfr_ui_pow_ui(out, 10, static_cast<unsigned long>(e), rnd);
    } else {
        mpfr_t t;
        mpfr_init2(t, mpfr_get_prec(out));
        mpfr_ui_pow_ui(t, 10, static_cast<unsigned long>(-e),
                       rnd == MPFR_RNDU ? MPFR_RNDD : MPFR_RNDU);
        mpfr_ui_div(out, 1, t, rnd);
        mpfr_clear(t);
    }
}

// err += one ulp of v, when the producing operation was inexact.
inline void add_ulp(mpfr_t err, mpfr_srcptr v, int inex) {
    if (inex == 0 || !mpfr_regular_p(v)) return;
    mpfr_t u;
    mpfr_init2(u, ERR_PREC);
    mpfr_set_ui_2exp(u, 1, mpfr_get_exp(v) - mpfr_get_prec(v), MPFR_RNDU);
    mpfr_add(err, err, u, MPFR_RNDU);
    mpfr_clear(u);
}

// t = |x| with the rounding applied to the magnitude.
inline void abs_to(mpfr_t t, mpfr_srcptr x, mpfr_rnd_t rnd_on_magnitude) {
    mpfr_rnd_t r = rnd_on_magnitude;
    if (mpfr_sgn(x) < 0) {
        if (r == MPFR_RNDU) r = MPFR_RNDD;
        else if (r == MPFR_RNDD) r = MPFR_RNDU;
    }
    mpfr_set(t, x, r);
    mpfr_abs(t, t, MPFR_RNDN);
}

} // namespace machin::detail
