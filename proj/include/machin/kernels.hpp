#pragma once

#include "machin/bigint.hpp"
#include "machin/hpreal.hpp"
#include "machin/precision.hpp"

namespace machin {

// Square root with a sound propagated error bound.
HPReal sqrt_hp(const HPReal& x, const PrecisionContext& ctx);
HPReal sqrt_hp(const BigRational& x, const PrecisionContext& ctx);

// arctan as the alternating Maclaurin series; |x| < 1 required.
HPReal arctan_maclaurin(const HPReal& x, const PrecisionContext& ctx);
HPReal arctan_maclaurin(const BigRational& x, const PrecisionContext& ctx);

// arctan as sum of 2^(2n)(n!)^2/(2n+1)! * x^(2n+1)/(1+x^2)^(n+1), any finite x.
// Terms built by the consecutive-term ratio, never by explicit factorials.
HPReal arctan_euler(const HPReal& x, const PrecisionContext& ctx);
HPReal arctan_euler(const BigRational& x, const PrecisionContext& ctx);

// arctan as 2*sum 1/(2n-1) * g_n/(g_n^2+h_n^2) with g_1 = 2/x, h_1 = 1 and the
// coupled g/h recurrences; x != 0.
HPReal arctan_gh(const HPReal& x, const PrecisionContext& ctx);
HPReal arctan_gh(const BigRational& x, const PrecisionContext& ctx);

// Exact Bernoulli number B_n via the double sum
//   B_n = sum_{m=0..n} 1/(m+1) sum_{l=0..m} (-1)^l C(m,l) l^n,
// memoized (the memo table is internally synchronized).
BigRational bernoulli(unsigned long n);

// Truncated tangent series sum_{n=1..terms} 4^n(4^n-1)|B_2n|/(2n)! x^(2n-1).
// The error bound covers rounding AND the analytic truncation remainder, so it
// generally exceeds the 10^-digits contract by design (explicitly truncated
// evaluator); callers wanting full accuracy use more terms or tan_hp.
HPReal tan_bernoulli(const HPReal& x, long terms, const PrecisionContext& ctx);

// tan(2^n * x) by the doubling rule f_m = 2f_{m-1}/(1-f_{m-1}^2) from the
// cubic-corrected seed s = x + x^3/3.  The error bound includes the seed's
// truncation distance from tan(x), so the result is honestly bounded but NOT
// held to the 10^-digits contract (the seed alone may exceed it).
HPReal tan_doubling(const HPReal& x, long n, const PrecisionContext& ctx);

// Full-accuracy tangent: halve the argument (exactly) until it is tiny, seed
// with the Bernoulli series, then apply the exact doubling identity back up.
// |x| must stay clear of pi/2.  Holds the 10^-digits contract or throws.
HPReal tan_hp(const HPReal& x, const PrecisionContext& ctx);

// log10(|x|); for rationals the integer parts go through digit counts plus a
// mantissa correction, so arbitrarily long numbers never round through a real.
HPReal log10_abs(const HPReal& x, const PrecisionContext& ctx);
HPReal log10_abs(const BigRational& x, const PrecisionContext& ctx);

} // namespace machin
