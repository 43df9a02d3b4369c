#pragma once

#include <vector>

#include "machin/hpreal.hpp"

namespace machin {

// State of the quadratically convergent iteration
//   theta_0 = 2^k,
//   theta_{n+1} = 1 / (1/theta_n + (1 - tan(2^(k-1)/theta_n)) / 2^k),
// whose iterates drive 2^(k+1)/theta_n -> pi with the correct digit count
// roughly doubling every step.  `ctx` stores the caller's base request; the
// working precision actually used at step n is
//   max(2^(n+1) + 10, base work digits).
struct QuadState {
    long k;
    HPReal theta;
    long n;
    PrecisionContext ctx;
};

QuadState quad_init(long k, const PrecisionContext& base); // k >= 1
QuadState quad_step(const QuadState& s);

// Current pi estimate 2^(k+1)/theta_n of a state.
HPReal quad_estimate(const QuadState& s);

// Estimates after steps 1..iterations (index 0 holds the step-1 estimate).
std::vector<HPReal> quad_sequence(long k, long iterations, const PrecisionContext& base);

// The estimate after `iterations` steps, with the default base request.
HPReal pi_quadratic(long k, long iterations);
HPReal pi_quadratic(long k, long iterations, const PrecisionContext& base);

// Number of leading decimal digits (clamped at >= 0) on which `approx`
// agrees with `reference`.  The reference must be strictly more precise than
// the approximation and must resolve the difference; otherwise
// PrecisionError.
long correct_digits(const HPReal& approx, const HPReal& reference);

} // namespace machin
