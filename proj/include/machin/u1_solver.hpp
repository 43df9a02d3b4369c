#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "machin/hpreal.hpp"

namespace machin {

// Floor of x certified against its error bound: succeeds only when the
// enclosure [v - err, v + err] cannot straddle an integer, i.e. when the
// fractional part keeps a distance greater than 2*err from both 0 and 1.
// Exact values (err == 0) always succeed.
std::optional<BigInt> try_safe_floor(const HPReal& x);

// As try_safe_floor, but throws FloorAmbiguityError instead of returning
// an empty optional.
BigInt safe_floor(const HPReal& x);

// Re-evaluates `eval` at doubled precision until the floor certifies,
// up to max_escalations doublings beyond the first attempt.
BigInt safe_floor_escalating(const std::function<HPReal(const PrecisionContext&)>& eval,
                             const PrecisionContext& ctx, int max_escalations = 4);

// Iterates u <- 1 / (1/u + (1 - tan(2^(k-1)/u)) / 2^k) from `guess` (> 0).
// The fixed point is exactly 2^(k+1)/pi, whose floor is u1_k throughout the
// tested range.  Stops when successive iterates agree to ctx.digits relative
// digits (cap 64 iterations).  When `trace` is given, every iterate is
// appended to it.
HPReal fixed_point_u1(long k, const BigRational& guess, const PrecisionContext& ctx,
                      std::vector<HPReal>* trace = nullptr);

// Same, seeded with the canonical initial guess floor(2^(k+1) / 3.14159).
HPReal fixed_point_u1(long k, const PrecisionContext& ctx,
                      std::vector<HPReal>* trace = nullptr);

// The surd-free integer chain u1_2 = 2,
//   u1_{k+1} = floor(2 / (1/u1_k + (1 - tan(2^(k-1) * (1/u1_k))) / 2^k)),
// with the tangent evaluated by cubic-seed doubling.  Every step is checked
// against the doubling inequality 2*u <= next <= 2*u + 1; a violation raises
// ConsistencyError.  Returns {u1_2, ..., u1_kmax}.
std::vector<BigInt> u1_chain(long k_max, const PrecisionContext& ctx);

// Last element of u1_chain(k, ctx): the surd-free u1_k.  k >= 2.
BigInt u1_surdless(long k, const PrecisionContext& ctx);

} // namespace machin
