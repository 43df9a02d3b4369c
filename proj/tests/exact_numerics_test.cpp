#include <doctest.h>

#include <string>
#include <thread>
#include <vector>

#include "machin/kernels.hpp"
#include "oracle.hpp"

using namespace machin;

namespace {
const PrecisionContext c30(30, 10);
const PrecisionContext c40(40, 10);
const PrecisionContext c50(50, 10);
} // namespace

TEST_CASE("precision context validates its fields") {
    CHECK_THROWS_AS(PrecisionContext(0), DomainError);
    CHECK_THROWS_AS(PrecisionContext(10, -1), DomainError);
    CHECK_EQ(PrecisionContext(30, 10).work_digits(), 40);
    CHECK_EQ(PrecisionContext(30, 10).escalated().digits, 60);
    CHECK_EQ(PrecisionContext(30, 10).plus(5).digits, 35);
}

TEST_CASE("tracked values render and compare") {
    HPReal third(BigRational(1, 3), c30);
    CHECK_EQ(third.fixed(20), "0.33333333333333333333");
    CHECK(third.meets_contract());

    HPReal x("2.5", c30);
    CHECK_EQ(x.fixed(2), "2.50");
    CHECK_EQ(x.sign(), 1);
    CHECK((-x).sign() == -1);
    CHECK_EQ(x.mul_2si(3).fixed(1), "20.0");
    CHECK(HPReal(c30).is_zero());

    CHECK(cmp(HPReal(2, c30), HPReal(3, c30)) < 0);
    CHECK(HPReal(2, c30) < HPReal(3, c30));
    CHECK(cmp_abs_pow10(HPReal(BigRational(1, 100), c30), -1) < 0);
    CHECK(cmp_abs_pow10(HPReal(BigRational(1, 100), c30), -3) > 0);
    CHECK(diff_below_pow10(x, HPReal(BigRational(5, 2), c30), -25));
}

TEST_CASE("arithmetic keeps the error contract") {
    HPReal a(BigRational(1, 3), c40);
    HPReal b(BigRational(1, 7), c40);
    for (const HPReal& r : {a + b, a - b, a * b, a / b, a.abs(), -a}) {
        CHECK(r.meets_contract());
        CHECK_NOTHROW(r.enforce_contract("test"));
    }
    // 1/3 * 3 - 1 is ~0 with a comparable error bound: not certifiably nonzero.
    HPReal z = a * HPReal(3, c40) - HPReal(1, c40);
    CHECK_FALSE(z.clears_zero());
    CHECK_THROWS_AS(HPReal(1, c40) / z, PrecisionError);
    // Rounding to a coarser target keeps the contract.
    HPReal coarse = (a / b).round_to(PrecisionContext(15, 5));
    CHECK(coarse.meets_contract());
}

TEST_CASE("square root: value, edge cases, domain") {
    CHECK_EQ(sqrt_hp(BigRational(2), c40).fixed(38),
             "1.41421356237309504880168872420969807857");
    CHECK(sqrt_hp(BigRational(0), c30).is_zero());
    CHECK_EQ(sqrt_hp(BigRational(9, 4), c30).fixed(5), "1.50000");
    CHECK_THROWS_AS(sqrt_hp(BigRational(-1), c30), DomainError);
    HPReal neg(-2, c30);
    CHECK_THROWS_AS(sqrt_hp(neg, c30), DomainError);
}

TEST_CASE("arctangent series reproduce reference digits") {
    const std::string atan5 = "0.1973955598498807583700497651947902934476";
    CHECK_EQ(arctan_euler(BigRational(1, 5), c40).fixed(40), atan5);
    CHECK_EQ(arctan_maclaurin(BigRational(1, 5), c40).fixed(40), atan5);
    CHECK_EQ(arctan_gh(BigRational(1, 5), c40).fixed(40), atan5);

    CHECK_EQ(arctan_euler(BigRational(1, 239), PrecisionContext(42, 10)).sci(40),
             "4.184076002074723864538214959285452741048e-03");

    for (long den : {2L, 3L, 7L, 57L, 239L, 682L, 12943L}) {
        BigRational x(1, den);
        HPReal ref = oracle::atan_ref(x, c50);
        CAPTURE(den);
        CHECK(diff_below_pow10(arctan_euler(x, c50), ref, -48));
        CHECK(diff_below_pow10(arctan_maclaurin(x, c50), ref, -48));
        CHECK(diff_below_pow10(arctan_gh(x, c50), ref, -48));
    }
}

TEST_CASE("arctangent series agree pairwise at 50 digits") {
    for (long den : {2L, 5L, 13L, 239L}) {
        BigRational x(1, den);
        std::string e = arctan_euler(x, c50).fixed(50);
        CAPTURE(den);
        CHECK_EQ(e, arctan_maclaurin(x, c50).fixed(50));
        CHECK_EQ(e, arctan_gh(x, c50).fixed(50));
    }
}

TEST_CASE("arctangent domain and trivia") {
    CHECK(arctan_euler(BigRational(0), c30).is_zero());
    CHECK(arctan_maclaurin(BigRational(0), c30).is_zero());
    // The alternating series needs |x| < 1; the other two do not.
    CHECK_THROWS_AS(arctan_maclaurin(BigRational(1), c30), DomainError);
    CHECK_THROWS_AS(arctan_maclaurin(BigRational(3, 2), c30), DomainError);
    CHECK(diff_below_pow10(arctan_euler(BigRational(2), c50),
                           oracle::atan_ref(BigRational(2), c50), -48));
    CHECK(diff_below_pow10(arctan_gh(BigRational(2), c50),
                           oracle::atan_ref(BigRational(2), c50), -48));
    // Odd functions.
    HPReal pos = arctan_euler(BigRational(1, 5), c40);
    HPReal neg = arctan_euler(BigRational(-1, 5), c40);
    CHECK(diff_below_pow10(pos, -neg, -38));
}

TEST_CASE("Bernoulli numbers: exact values, odd vanishing, reuse") {
    CHECK_EQ(bernoulli(0), BigRational(1));
    CHECK_EQ(bernoulli(2), BigRational(1, 6));
    CHECK_EQ(bernoulli(4), BigRational(-1, 30));
    CHECK_EQ(bernoulli(6), BigRational(1, 42));
    CHECK_EQ(bernoulli(8), BigRational(-1, 30));
    CHECK_EQ(bernoulli(10), BigRational(5, 66));
    CHECK_EQ(bernoulli(12), BigRational(-691, 2730));
    for (unsigned long n = 3; n <= 29; n += 2) {
        CAPTURE(n);
        CHECK(bernoulli(n).is_zero());
    }
    // Memoized table is shared across threads.
    std::vector<std::thread> pool;
    std::vector<BigRational> got(4);
    for (int t = 0; t < 4; ++t)
        pool.emplace_back([&got, t] { got[static_cast<size_t>(t)] = bernoulli(40); });
    for (auto& th : pool) th.join();
    for (const auto& v : got) CHECK_EQ(v, bernoulli(40));
}

TEST_CASE("tangent via explicit series truncation") {
    HPReal x(BigRational(1, 10), c50);
    CHECK_EQ(tan_bernoulli(x, 8, c50).fixed(32), "0.10033467208545054505215576115047");
    // More terms converge to the reference value.
    CHECK(diff_below_pow10(tan_bernoulli(x, 40, c50),
                           oracle::tan_ref(BigRational(1, 10), c50), -48));
    CHECK(tan_bernoulli(HPReal(c30), 3, c30).is_zero());
    CHECK_THROWS_AS(tan_bernoulli(x, 0, c30), DomainError);
    // The series only converges inside |x| < pi/2.
    CHECK_THROWS_AS(tan_bernoulli(HPReal(BigRational(8, 5), c30), 5, c30), DomainError);
}

TEST_CASE("tangent via argument doubling from a cubic seed") {
    // n = 0 returns the seed itself: x + x^3/3.
    CHECK_EQ(tan_doubling(HPReal(BigRational(1, 10), c50), 0, c50).fixed(32),
             "0.10033333333333333333333333333333");
    // Doubling n times tracks tan(2^n x) to the seed's accuracy budget:
    // truncation ~2x^5/15 at the seed, roughly doubled per doubling step.
    HPReal approx = tan_doubling(HPReal(BigRational(1, 100), c30), 3, c30);
    CHECK(diff_below_pow10(approx, oracle::tan_ref(BigRational(8, 100), c30), -9));
    // Seed arguments close to 1 lose the small-angle premise.
    CHECK_THROWS_AS(tan_doubling(HPReal(BigRational(9, 10), c30), 0, c30), DomainError);
    CHECK_THROWS_AS(tan_doubling(HPReal(BigRational(1, 10), c30), -1, c30), DomainError);
}

TEST_CASE("full-precision tangent") {
    CHECK_EQ(tan_hp(HPReal(BigRational(1, 10), PrecisionContext(39, 10)),
                    PrecisionContext(39, 10))
                 .fixed(39),
             "0.100334672085450545058080045781111536819");
    for (const BigRational& x :
         {BigRational(1), BigRational(-3, 4), BigRational(3, 2), BigRational(1, 1000)}) {
        CAPTURE(x.str());
        CHECK(diff_below_pow10(tan_hp(HPReal(x, c50), c50), oracle::tan_ref(x, c50), -48));
    }
    CHECK(tan_hp(HPReal(c30), c30).is_zero());
    // Arguments at or beyond the first pole are rejected.
    CHECK_THROWS_AS(tan_hp(HPReal(BigRational(158, 100), c30), c30), DomainError);
    CHECK_THROWS_AS(tan_hp(HPReal(-2, c30), c30), DomainError);
}

TEST_CASE("base-10 logarithm of magnitudes") {
    CHECK_EQ(log10_abs(BigRational(3), c30).fixed(29),
             "0.47712125471966243729502790326");
    CHECK(diff_below_pow10(log10_abs(BigRational(1000), c30), HPReal(3, c30), -28));
    CHECK(diff_below_pow10(log10_abs(BigRational(-1, 100), c30), HPReal(-2, c30), -28));
    CHECK(log10_abs(BigRational(1), c30).is_zero());
    CHECK_THROWS_AS(log10_abs(BigRational(0), c30), DomainError);
    CHECK_THROWS_AS(log10_abs(HPReal(c30), c30), DomainError);

    // Huge operands still meet the accuracy contract.
    BigInt big, den7;
    mpz_ui_pow_ui(big.get_mpz_t(), 10, 500);
    mpz_ui_pow_ui(den7.get_mpz_t(), 7, 100);
    HPReal l = log10_abs(BigRational(big + 1, den7), c30);
    CHECK(l.meets_contract());
    CHECK_EQ(l.fixed(4), "415.4902");
}
