#include "machin/gaussian.hpp"

namespace machin {

GaussianRational GaussianRational::inverse() const {
    BigRational n = norm();
    if (n.is_zero()) throw DomainError("GaussianRational: inverse of zero");
    return GaussianRational(re_ / n, -(im_ / n));
}

GaussianRational GaussianRational::pow(const BigInt& e) const {
    if (sgn(e) == 0) return one();
    if (sgn(e) < 0) return inverse().pow(BigInt(-e));

    // Square-and-multiply, walking the exponent bits from the top.
    GaussianRational acc = one();
    mp_bitcnt_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
    for (mp_bitcnt_t i = bits; i-- > 0;) {
        acc = acc.square();
        if (mpz_tstbit(e.get_mpz_t(), i)) acc = acc * (*this);
    }
    return acc;
}

std::string GaussianRational::str() const {
    std::string s = re_.str();
    if (im_.sign() >= 0) s += " + " + im_.str() + "*i";
    else s += " - " + (-im_).str() + "*i";
    return s;
}

GaussianRational angle_base(const BigRational& b) {
    if (b.is_zero()) throw DomainError("angle_base: b must be nonzero");
    BigInt p = b.num();
    BigInt q = b.den();
    BigInt p2 = p * p;
    BigInt q2 = q * q;
    BigInt den = p2 + q2;
    return GaussianRational(BigRational(p2 - q2, den), BigRational(2 * p * q, den));
}

} // namespace machin
