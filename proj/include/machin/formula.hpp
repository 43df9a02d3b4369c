#pragma once

#include <string>
#include <vector>

#include "machin/gaussian.hpp"
#include "machin/hpreal.hpp"
#include "machin/kernels.hpp"

namespace machin {

// pi/4 = 2^(k-1) * arctan(1/u1) + arctan(1/u2), with integer u1 and exact
// rational u2.
struct TwoTermFormula {
    long k;
    BigInt u1;
    BigRational u2;
};

// One term a * arctan(1/b) of a generalized arctangent sum for pi/4.
struct MachinTerm {
    BigInt a;
    BigRational b;
};

// A list of terms claiming pi/4 = sum a_j * arctan(1/b_j).  Construction
// validates shape only (a_j != 0, b_j != 0); whether the identity holds is
// verify_formula's question.
class MachinFormula {
public:
    explicit MachinFormula(std::vector<MachinTerm> terms);
    const std::vector<MachinTerm>& terms() const { return terms_; }

private:
    std::vector<MachinTerm> terms_;
};

// ---------------------------------------------------------------------------
// Exact companion-term construction
// ---------------------------------------------------------------------------

// The two-step squaring walk
//   sigma_1 = (u^2 - 1)/(u^2 + 1),  tau_1 = 2u/(u^2 + 1),
//   sigma_n = sigma_{n-1}^2 - tau_{n-1}^2,  tau_n = 2 sigma_{n-1} tau_{n-1},
// carried out exactly for k-1 steps.  The pair is the point
// ((u+i)/(u-i))^(2^(k-1)) on the unit circle.  k >= 1, u nonzero.
GaussianRational two_step_iteration(const BigRational& u1, long k);

// u2_k = sigma_k / (1 - tau_k): the exact rational second term completing
// pi/4 = 2^(k-1) arctan(1/u1) + arctan(1/u2).  The numerator and denominator
// roughly double in length every step, so k > 24 is refused unless `force`.
BigRational u2_exact(const BigRational& u1, long k, bool force = false);

// Completion for a general first term alpha * arctan(1/beta1), beta1 > 1:
// beta2 with pi/4 = alpha * arctan(1/beta1) + arctan(1/beta2).  alpha >= 1.
BigRational beta2_from_alpha(const BigInt& alpha, const BigRational& beta1);

// Floating companions, for cross-checks against u2_exact.
// u2_trig evaluates (1 + t)/(1 - t) with t = tan(2^(k-1) arctan(1/u1));
// u2_approx drops the arctangent: t = tan(2^(k-1)/u1).  u1 >= 2 integer.
HPReal u2_trig(const BigInt& u1, long k, const PrecisionContext& ctx);
HPReal u2_approx(const BigInt& u1, long k, const PrecisionContext& ctx);

// ---------------------------------------------------------------------------
// Verification and classical formulas
// ---------------------------------------------------------------------------

// Exact test of pi/4 = sum a_j arctan(1/b_j) (mod pi): the product of
// ((b_j + i)/(b_j - i))^(a_j) over all terms must equal i.
bool verify_formula(const MachinFormula& f);

// The N-term family with a_j = 1, b_n = ((n-1)n + N^2)/N for n = 1..N.
MachinFormula identity9_terms(long N);

MachinFormula machin_formula();   //  4 atan(1/5)  -   atan(1/239)
MachinFormula kanada_formula_1(); // 44/57, 7/239, -12/682, 24/12943
MachinFormula kanada_formula_2(); // 12/49, 32/57, -5/239, 12/110443

// Two-term formula as a generic term list: [2^(k-1) atan(1/u1), atan(1/u2)].
MachinFormula to_machin(const TwoTermFormula& f);

// ---------------------------------------------------------------------------
// Efficiency measures
// ---------------------------------------------------------------------------

// mu = sum_j 1 / log10|b_j|.  Smaller is better; |b_j| <= 1 is rejected.
HPReal lehmer_measure(const MachinFormula& f, const PrecisionContext& ctx);

// Measure of the completed two-term formula for a given u1 = u1_k without
// materializing u2: the residual phi = pi/4 - 2^(k-1) arctan(1/u1) satisfies
// arctan(1/u2) = phi, so 1/log10|u2| = -1/log10|tan phi|.
HPReal lehmer_estimate_two_term(long k, const BigInt& u1, const PrecisionContext& ctx);

// ---------------------------------------------------------------------------
// Digits of pi
// ---------------------------------------------------------------------------

enum class Series { maclaurin, euler, gh };

// "3." followed by `digits` truncated decimal digits, computed from the
// formula's arctangent sum with the chosen series and validated by a second
// evaluation at higher precision (escalating on disagreement).
std::string compute_pi(const MachinFormula& f, long digits, Series series);
std::string compute_pi(const TwoTermFormula& f, long digits, Series series);

// Self-contained pi reference: the k = 6 two-term formula (u1 = 40) summed
// with the always-convergent series.  Recomputed on every call, never cached.
HPReal pi_hp(const PrecisionContext& ctx);

} // namespace machin
