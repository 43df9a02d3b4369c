#include "machin/formula.hpp"

#include <utility>

namespace machin {

namespace {

long trig_boost(long k) {
    // |u2_k| grows like 2^(k+1)/pi, i.e. ~0.30 decimal digits per level; the
    // division by 1 - tan(...) near its zero costs that many digits twice
    // over in the worst intermediate, so budget generously.
    return (31 * k + 99) / 100 + 12;
}

HPReal arctan_by(Series series, const BigRational& x, const PrecisionContext& ctx) {
    switch (series) {
        case Series::maclaurin: return arctan_maclaurin(x, ctx);
        case Series::euler: return arctan_euler(x, ctx);
        case Series::gh: return arctan_gh(x, ctx);
    }
    throw DomainError("compute_pi: unknown series selector");
}

} // namespace

MachinFormula::MachinFormula(std::vector<MachinTerm> terms) : terms_(std::move(terms)) {
    if (terms_.empty()) throw DomainError("MachinFormula: no terms");
    for (const MachinTerm& t : terms_) {
        if (sgn(t.a) == 0) throw DomainError("MachinFormula: zero coefficient");
        if (t.b.is_zero()) throw DomainError("MachinFormula: zero arctangent base");
    }
}

// ---------------------------------------------------------------------------
// Exact companion-term construction
// ---------------------------------------------------------------------------

GaussianRational two_step_iteration(const BigRational& u1, long k) {
    if (k < 1) throw DomainError("two_step_iteration: k must be >= 1");
    if (u1.is_zero()) throw DomainError("two_step_iteration: u1 must be nonzero");

    BigRational u2 = u1 * u1;
    BigRational den = u2 + BigRational(1);
    BigRational sigma = (u2 - BigRational(1)) / den;
    BigRational tau = (u1 + u1) / den;
    for (long n = 2; n <= k; ++n) {
        BigRational s_next = sigma * sigma - tau * tau;
        BigRational t_next = (sigma * tau) + (sigma * tau);
        sigma = std::move(s_next);
        tau = std::move(t_next);
    }
    return GaussianRational(sigma, tau);
}

BigRational u2_exact(const BigRational& u1, long k, bool force) {
    if (k > 24 && !force)
        throw DomainError("u2_exact: k > 24 materializes multi-megadigit rationals; "
                          "pass force to override");
    GaussianRational z = two_step_iteration(u1, k);
    BigRational one(1);
    if (z.im() == one)
        throw DomainError("u2_exact: first term already closes the identity (tau = 1)");
    return z.re() / (one - z.im());
}

BigRational beta2_from_alpha(const BigInt& alpha, const BigRational& beta1) {
    if (sgn(alpha) < 1) throw DomainError("beta2_from_alpha: alpha must be >= 1");
    if (!(beta1 > BigRational(1))) throw DomainError("beta2_from_alpha: requires beta1 > 1");
    GaussianRational z = angle_base(beta1).pow(alpha);
    BigRational one(1);
    if (z.im() == one)
        throw DomainError("beta2_from_alpha: first term already closes the identity");
    return z.re() / (one - z.im());
}

HPReal u2_trig(const BigInt& u1, long k, const PrecisionContext& ctx) {
    if (k < 1) throw DomainError("u2_trig: k must be >= 1");
    if (u1 < 2) throw DomainError("u2_trig: u1 must be an integer >= 2");

    PrecisionContext bctx = ctx.plus(trig_boost(k));
    HPReal theta = arctan_euler(BigRational(BigInt(1), u1), bctx).mul_2si(k - 1);
    HPReal t = tan_hp(theta, bctx);
    HPReal one(1, bctx);
    HPReal den = one - t;
    if (!den.clears_zero())
        throw PrecisionError("u2_trig: 1 - tan(...) does not clear zero at this precision");
    HPReal r = ((one + t) / den).round_to(ctx);
    r.enforce_contract("u2_trig");
    return r;
}

HPReal u2_approx(const BigInt& u1, long k, const PrecisionContext& ctx) {
    if (k < 1) throw DomainError("u2_approx: k must be >= 1");
    if (u1 < 2) throw DomainError("u2_approx: u1 must be an integer >= 2");

    PrecisionContext bctx = ctx.plus(trig_boost(k));
    HPReal x(BigRational(BigInt(1) << static_cast<unsigned long>(k - 1), u1), bctx);
    HPReal t = tan_hp(x, bctx);
    HPReal one(1, bctx);
    HPReal den = one - t;
    if (!den.clears_zero())
        throw PrecisionError("u2_approx: 1 - tan(...) does not clear zero at this precision");
    HPReal r = (HPReal(2, bctx) / den).round_to(ctx);
    r.enforce_contract("u2_approx");
    return r;
}

// ---------------------------------------------------------------------------
// Verification and classical formulas
// ---------------------------------------------------------------------------

bool verify_formula(const MachinFormula& f) {
    GaussianRational product = GaussianRational::one();
    for (const MachinTerm& t : f.terms())
        product = product * angle_base(t.b).pow(t.a);
    return product == GaussianRational::i();
}

MachinFormula identity9_terms(long N) {
    if (N < 1) throw DomainError("identity9_terms: N must be >= 1");
    std::vector<MachinTerm> terms;
    terms.reserve(static_cast<size_t>(N));
    for (long n = 1; n <= N; ++n) {
        BigInt num = BigInt(n - 1) * BigInt(n) + BigInt(N) * BigInt(N);
        terms.push_back({BigInt(1), BigRational(num, BigInt(N))});
    }
    return MachinFormula(std::move(terms));
}

MachinFormula machin_formula() {
    return MachinFormula({{BigInt(4), BigRational(5)}, {BigInt(-1), BigRational(239)}});
}

MachinFormula kanada_formula_1() {
    return MachinFormula({{BigInt(44), BigRational(57)},
                          {BigInt(7), BigRational(239)},
                          {BigInt(-12), BigRational(682)},
                          {BigInt(24), BigRational(12943)}});
}

MachinFormula kanada_formula_2() {
    return MachinFormula({{BigInt(12), BigRational(49)},
                          {BigInt(32), BigRational(57)},
                          {BigInt(-5), BigRational(239)},
                          {BigInt(12), BigRational(110443)}});
}

MachinFormula to_machin(const TwoTermFormula& f) {
    if (f.k < 1) throw DomainError("to_machin: k must be >= 1");
    BigInt a1 = BigInt(1) << static_cast<unsigned long>(f.k - 1);
    return MachinFormula({{a1, BigRational(f.u1)}, {BigInt(1), f.u2}});
}

// ---------------------------------------------------------------------------
// Efficiency measures
// ---------------------------------------------------------------------------

HPReal lehmer_measure(const MachinFormula& f, const PrecisionContext& ctx) {
    PrecisionContext ictx = ctx.plus(5);
    HPReal one(1, ictx);
    HPReal mu(ictx);
    for (const MachinTerm& t : f.terms()) {
        if (t.b.abs() <= BigRational(1))
            throw DomainError("lehmer_measure: every term needs |b| > 1");
        mu = mu + one / log10_abs(t.b, ictx);
    }
    HPReal r = mu.round_to(ctx);
    r.enforce_contract("lehmer_measure");
    return r;
}

HPReal lehmer_estimate_two_term(long k, const BigInt& u1, const PrecisionContext& ctx) {
    if (k < 2) throw DomainError("lehmer_estimate_two_term: k must be >= 2");
    if (u1 < 2) throw DomainError("lehmer_estimate_two_term: u1 must be an integer >= 2");

    PrecisionContext bctx = ctx.plus(trig_boost(k));
    HPReal quarter_pi = pi_hp(bctx).mul_2si(-2);
    HPReal theta = arctan_euler(BigRational(BigInt(1), u1), bctx).mul_2si(k - 1);
    HPReal phi = quarter_pi - theta;       // = arctan(1/u2) of the completed formula
    HPReal t = tan_hp(phi, bctx);          // = 1/u2

    HPReal one(1, bctx);
    HPReal mu = one / log10_abs(HPReal(BigRational(u1), bctx), bctx)
              - one / log10_abs(t, bctx);  // log10|u2| = -log10|tan phi|
    HPReal r = mu.round_to(ctx);
    r.enforce_contract("lehmer_estimate_two_term");
    return r;
}

// ---------------------------------------------------------------------------
// Digits of pi
// ---------------------------------------------------------------------------

namespace {

std::string pi_digits_once(const MachinFormula& f, long frac_digits, Series series) {
    PrecisionContext ctx(frac_digits + 12, 10);
    HPReal acc(ctx);
    for (const MachinTerm& t : f.terms())
        acc = acc + arctan_by(series, t.b.inverse(), ctx).mul_int(t.a);
    return acc.mul_2si(2).digit_string(frac_digits);
}

} // namespace

std::string compute_pi(const MachinFormula& f, long digits, Series series) {
    if (digits < 1) throw DomainError("compute_pi: digits must be >= 1");

    // Validate by recomputation 10 digits deeper; escalate on disagreement.
    for (int attempt = 0; attempt < 3; ++attempt) {
        long d1 = digits + 20 * attempt;
        std::string s1 = pi_digits_once(f, d1, series);
        std::string s2 = pi_digits_once(f, d1 + 10, series);
        size_t want = static_cast<size_t>(digits) + 2; // "3." prefix
        if (s1.size() >= want && s2.size() >= want &&
            s1.compare(0, want, s2, 0, want) == 0)
            return s1.substr(0, want);
    }
    throw PrecisionError("compute_pi: digit validation kept disagreeing after escalation");
}

std::string compute_pi(const TwoTermFormula& f, long digits, Series series) {
    return compute_pi(to_machin(f), digits, series);
}

HPReal pi_hp(const PrecisionContext& ctx) {
    PrecisionContext bctx = ctx.plus(5);
    BigRational u2 = u2_exact(BigRational(40), 6);
    HPReal a1 = arctan_euler(BigRational(1, 40), bctx).mul_2si(5);
    HPReal a2 = arctan_euler(u2.inverse(), bctx);
    HPReal r = ((a1 + a2).mul_2si(2)).round_to(ctx);
    r.enforce_contract("pi_hp");
    return r;
}

} // namespace machin
