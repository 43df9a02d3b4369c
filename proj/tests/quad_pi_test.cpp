#include <doctest.h>

#include <vector>

#include "machin/quad_pi.hpp"
#include "oracle.hpp"

using namespace machin;

namespace {
const PrecisionContext c30(30, 10);
const PrecisionContext c50(50, 10);

constexpr long kGoldenDigits[] = {0, 1, 4, 9, 19, 39, 79, 159, 319, 639};
} // namespace

TEST_CASE("iteration state starts at theta = 2^k and steps once per call") {
    QuadState st = quad_init(7, c30);
    CHECK_EQ(st.k, 7);
    CHECK_EQ(st.n, 0);
    CHECK_EQ(quad_estimate(st).fixed(3), "2.000");

    st = quad_step(st);
    CHECK_EQ(st.n, 1);
    CHECK_EQ(quad_estimate(st).sci(25), "2.907395020312418973489641e+00");

    CHECK_THROWS_AS(quad_init(0, c30), DomainError);
    CHECK_THROWS_AS(quad_init(63, c30), DomainError);
}

TEST_CASE("digit counts double per iteration") {
    HPReal ref = oracle::pi_ref(PrecisionContext(2200, 10));
    std::vector<long> counts;
    for (long n = 1; n <= 10; ++n)
        counts.push_back(correct_digits(pi_quadratic(7, n), ref));
    for (size_t i = 0; i < counts.size(); ++i) {
        CAPTURE(i);
        CHECK_EQ(counts[i], kGoldenDigits[i]);
    }
    // Quadratic convergence: the count roughly doubles each step.
    for (size_t i = 1; i + 1 < counts.size(); ++i) {
        CAPTURE(i);
        CHECK(counts[i + 1] >= 2 * counts[i] - 1);
    }
}

TEST_CASE("printed estimates of the first five iterations") {
    const char* expected[] = {
        "2.907395020312418973489641e+00", "3.128878092399718501843067e+00",
        "3.141552409181815125317050e+00", "3.141592653184895576712223e+00",
        "3.141592653589793238421658e+00"};
    std::vector<HPReal> seq = quad_sequence(7, 5, c30);
    REQUIRE_EQ(seq.size(), 5);
    for (size_t i = 0; i < 5; ++i) {
        CAPTURE(i);
        CHECK_EQ(seq[i].sci(25), expected[i]);
    }
}

TEST_CASE("the limit does not depend on the scale parameter") {
    HPReal ref = oracle::pi_ref(PrecisionContext(600, 10));
    for (long k : {1L, 3L, 7L, 12L}) {
        CAPTURE(k);
        CHECK(correct_digits(pi_quadratic(k, 8), ref) >= 50);
    }
}

TEST_CASE("digit-count comparison guards its preconditions") {
    // Reference must carry more working digits than the approximation.
    HPReal approx(BigRational(22, 7), PrecisionContext(40, 10));
    CHECK_THROWS_AS(correct_digits(approx, oracle::pi_ref(c30)), PrecisionError);

    // Indistinguishable values cannot be scored. (A dyadic rational is
    // represented identically at both precisions, so the difference is 0.)
    HPReal dyadic(BigRational(7, 4), PrecisionContext(40, 10));
    HPReal dyadic_wide(BigRational(7, 4), PrecisionContext(80, 10));
    CHECK_THROWS_AS(correct_digits(dyadic, dyadic_wide), PrecisionError);

    // A reference with a loose error bound cannot certify the difference.
    HPReal sloppy = oracle::pi_ref(PrecisionContext(80, 10));
    oracle::set_err(sloppy, 1e-2);
    CHECK_THROWS_AS(correct_digits(approx, sloppy), PrecisionError);

    // Normal case: |22/7 - pi| = 1.26e-3, so two certified digits.
    CHECK_EQ(correct_digits(approx, oracle::pi_ref(PrecisionContext(80, 10))), 2);
}
