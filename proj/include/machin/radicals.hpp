#pragma once

#include <vector>

#include "machin/hpreal.hpp"
#include "machin/kernels.hpp"

namespace machin {

// The nested radical chain a_0 = 0, a_n = sqrt(2 + a_{n-1}), which climbs
// toward 2 from below.  All entries are evaluated once, at a working
// precision boosted to absorb the ~0.6 digits/level cancellation that
// consumers of 2 - a_{k-1} will hit.
class RadicalSequence {
public:
    RadicalSequence(long k, const PrecisionContext& base);

    long k() const { return k_; }
    const PrecisionContext& ctx() const { return ctx_; }
    const HPReal& a(long n) const; // throws DomainError when n is out of [0, k]

    static PrecisionContext boosted(const PrecisionContext& base, long k);

private:
    long k_;
    PrecisionContext ctx_;
    std::vector<HPReal> values_;
};

// a_k itself, at the boosted working precision.
HPReal nested_radical(long k, const PrecisionContext& ctx); // k >= 0

// u1_k = floor(a_k / sqrt(2 - a_{k-1})), computed from the radical chain with
// a certified floor; escalates precision internally if the fractional part
// sits too close to an integer.  k >= 1.
BigInt u1_radical(long k, const PrecisionContext& ctx);

// 2^k * sqrt(2 - a_{k-1}) -> pi as k grows.  k >= 1; result at ctx.
HPReal pi_radical_limit(long k, const PrecisionContext& ctx);

} // namespace machin
