#include "machin/u1_solver.hpp"

#include <algorithm>
#include <string>

#include "machin/kernels.hpp"

#include "hp_detail.hpp"

namespace machin {

using detail::hp_access;

std::optional<BigInt> try_safe_floor(const HPReal& x) {
    mpfr_srcptr v = hp_access::val(x);
    mpfr_srcptr e = hp_access::err(x);
    if (!mpfr_number_p(v)) throw DomainError("safe_floor: value is not finite");

    BigInt f;
    mpfr_get_z(f.get_mpz_t(), v, MPFR_RNDD); // floor of the stored value
    if (mpfr_zero_p(e)) return f;

    // Fractional part, exactly: v - floor(v) fits in prec(v) + 2 bits.
    mpfr_t frac, dist, gap;
    mpfr_init2(frac, mpfr_get_prec(v) + 2);
    mpfr_init2(dist, mpfr_get_prec(v) + 2);
    mpfr_init2(gap, detail::ERR_PREC);
    mpfr_sub_z(frac, v, f.get_mpz_t(), MPFR_RNDN);

    // Distance to the nearest integer: min(frac, 1 - frac).
    mpfr_ui_sub(dist, 1, frac, MPFR_RNDD);
    if (mpfr_cmp(frac, dist) < 0) mpfr_set(dist, frac, MPFR_RNDD);

    mpfr_mul_2ui(gap, e, 1, MPFR_RNDU); // 2 * err, rounded up
    bool ok = mpfr_cmp(dist, gap) > 0;
    mpfr_clears(frac, dist, gap, static_cast<mpfr_ptr>(nullptr));

    if (!ok) return std::nullopt;
    return f;
}

BigInt safe_floor(const HPReal& x) {
    auto f = try_safe_floor(x);
    if (!f)
        throw FloorAmbiguityError("safe_floor: enclosure straddles an integer "
                                  "(value " + x.sci(8) + ")");
    return *f;
}

BigInt safe_floor_escalating(const std::function<HPReal(const PrecisionContext&)>& eval,
                             const PrecisionContext& ctx, int max_escalations) {
    PrecisionContext c = ctx;
    for (int attempt = 0; ; ++attempt) {
        if (auto f = try_safe_floor(eval(c))) return *f;
        if (attempt >= max_escalations)
            throw FloorAmbiguityError("safe_floor: still ambiguous after " +
                                      std::to_string(max_escalations) +
                                      " precision escalations");
        c = c.escalated();
    }
}

namespace {

// One application of u -> 1 / (1/u + (1 - tan(2^(k-1) * (1/u))) / 2^k),
// with a caller-chosen tangent evaluator.
template <typename Tan>
HPReal contraction_step(const HPReal& u, long k, const PrecisionContext& ctx, Tan&& tan_eval) {
    HPReal inv = HPReal(1, ctx) / u;
    HPReal t = tan_eval(inv);
    HPReal denom = inv + (HPReal(1, ctx) - t).mul_2si(-k);
    if (!denom.clears_zero())
        throw PrecisionError("u1 iteration: denominator does not clear zero");
    return HPReal(1, ctx) / denom;
}

} // namespace

HPReal fixed_point_u1(long k, const BigRational& guess, const PrecisionContext& ctx,
                      std::vector<HPReal>* trace) {
    if (k < 2) throw DomainError("fixed_point_u1: k must be >= 2");
    if (guess.sign() <= 0) throw DomainError("fixed_point_u1: guess must be positive");

    BigInt rel;
    mpz_ui_pow_ui(rel.get_mpz_t(), 10, static_cast<unsigned long>(ctx.digits));

    HPReal u(guess, ctx);
    for (int it = 0; it < 64; ++it) {
        HPReal next = contraction_step(u, k, ctx, [&](const HPReal& inv) {
            return tan_hp(inv.mul_2si(k - 1), ctx);
        });
        if (trace) trace->push_back(next);
        // Converged when |next - u| * 10^digits <= |next|.
        bool settled = cmp((next - u).abs().mul_int(rel), next.abs()) <= 0;
        u = next;
        if (settled) return u;
    }
    throw ConvergenceError("fixed_point_u1: no convergence within 64 iterations");
}

HPReal fixed_point_u1(long k, const PrecisionContext& ctx, std::vector<HPReal>* trace) {
    if (k < 2) throw DomainError("fixed_point_u1: k must be >= 2");
    BigInt g = ((BigInt(1) << static_cast<unsigned long>(k + 1)) * 100000) / 314159;
    return fixed_point_u1(k, BigRational(g), ctx, trace);
}

std::vector<BigInt> u1_chain(long k_max, const PrecisionContext& ctx) {
    if (k_max < 2) throw DomainError("u1_chain: k_max must be >= 2");

    std::vector<BigInt> chain;
    chain.reserve(static_cast<size_t>(k_max - 1));
    chain.push_back(BigInt(2)); // u1_2

    for (long k = 2; k < k_max; ++k) {
        const BigInt u = chain.back();
        PrecisionContext step_ctx(std::max(32L, k + 16), ctx.guard);
        auto eval = [&u, k](const PrecisionContext& c) {
            HPReal inv(BigRational(BigInt(1), u), c);
            HPReal t = tan_doubling(inv, k - 1, c);
            HPReal denom = inv + (HPReal(1, c) - t).mul_2si(-k);
            if (!denom.clears_zero())
                throw PrecisionError("u1_chain: denominator does not clear zero");
            return HPReal(2, c) / denom;
        };
        BigInt next = safe_floor_escalating(eval, step_ctx);
        if (next < 2 * u || next > 2 * u + 1)
            throw ConsistencyError("u1_chain: doubling inequality violated at k = " +
                                   std::to_string(k + 1) + " (u = " + u.get_str() +
                                   ", next = " + next.get_str() + ")");
        chain.push_back(next);
    }
    return chain;
}

BigInt u1_surdless(long k, const PrecisionContext& ctx) {
    if (k < 2) throw DomainError("u1_surdless: k must be >= 2");
    return u1_chain(k, ctx).back();
}

} // namespace machin
