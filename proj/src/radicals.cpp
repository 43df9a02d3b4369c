#include "machin/radicals.hpp"

#include <string>

#include "machin/u1_solver.hpp"

namespace machin {

PrecisionContext RadicalSequence::boosted(const PrecisionContext& base, long k) {
    if (k < 0) throw DomainError("RadicalSequence: k must be >= 0");
    // Each level of the chain brings a_k another factor of 4 closer to 2, so
    // downstream evaluations of 2 - a_{k-1} cancel ~0.6 decimal digits per
    // level; 0.7 per level keeps a margin on top of that.
    return base.plus((7 * k + 9) / 10);
}

RadicalSequence::RadicalSequence(long k, const PrecisionContext& base)
    : k_(k), ctx_(boosted(base, k)) {
    values_.reserve(static_cast<size_t>(k) + 1);
    values_.push_back(HPReal(ctx_)); // a_0 = 0, exact
    HPReal two(2, ctx_);
    for (long n = 1; n <= k; ++n)
        values_.push_back(sqrt_hp(two + values_.back(), ctx_));
}

const HPReal& RadicalSequence::a(long n) const {
    if (n < 0 || n > k_)
        throw DomainError("RadicalSequence: index " + std::to_string(n) +
                          " outside [0, " + std::to_string(k_) + "]");
    return values_[static_cast<size_t>(n)];
}

HPReal nested_radical(long k, const PrecisionContext& ctx) {
    if (k < 0) throw DomainError("nested_radical: k must be >= 0");
    RadicalSequence seq(k, ctx);
    return seq.a(k);
}

BigInt u1_radical(long k, const PrecisionContext& ctx) {
    if (k < 1) throw DomainError("u1_radical: k must be >= 1");
    // k = 1: the ratio is sqrt(2)/sqrt(2) = 1 exactly, but no finite-precision
    // enclosure can certify the floor of an exact integer; resolve it
    // algebraically instead.
    if (k == 1) return BigInt(1);

    auto eval = [k](const PrecisionContext& c) {
        RadicalSequence seq(k, c);
        HPReal two(2, seq.ctx());
        return seq.a(k) / sqrt_hp(two - seq.a(k - 1), seq.ctx());
    };
    return safe_floor_escalating(eval, ctx);
}

HPReal pi_radical_limit(long k, const PrecisionContext& ctx) {
    if (k < 1) throw DomainError("pi_radical_limit: k must be >= 1");
    RadicalSequence seq(k - 1, ctx);
    HPReal two(2, seq.ctx());
    HPReal r = sqrt_hp(two - seq.a(k - 1), seq.ctx()).mul_2si(k).round_to(ctx);
    r.enforce_contract("pi_radical_limit");
    return r;
}

} // namespace machin
