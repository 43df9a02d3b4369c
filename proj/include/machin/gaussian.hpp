#pragma once

#include "machin/bigint.hpp"

namespace machin {

// Exact complex arithmetic over the rationals.  Everything here is used on
// the unit circle (angle walks), but the operations are general.
class GaussianRational {
public:
    GaussianRational() : re_(0), im_(0) {}
    GaussianRational(BigRational re, BigRational im)
        : re_(std::move(re)), im_(std::move(im)) {}

    static GaussianRational one() { return GaussianRational(BigRational(1), BigRational(0)); }
    static GaussianRational i() { return GaussianRational(BigRational(0), BigRational(1)); }

    const BigRational& re() const { return re_; }
    const BigRational& im() const { return im_; }

    bool is_zero() const { return re_.is_zero() && im_.is_zero(); }

    GaussianRational conj() const { return GaussianRational(re_, -im_); }
    BigRational norm() const { return re_ * re_ + im_ * im_; } // |z|^2
    bool on_unit_circle() const { return norm() == BigRational(1); }

    GaussianRational inverse() const; // throws DomainError on zero

    friend GaussianRational operator+(const GaussianRational& a, const GaussianRational& b) {
        return GaussianRational(a.re_ + b.re_, a.im_ + b.im_);
    }
    friend GaussianRational operator-(const GaussianRational& a, const GaussianRational& b) {
        return GaussianRational(a.re_ - b.re_, a.im_ - b.im_);
    }
    friend GaussianRational operator*(const GaussianRational& a, const GaussianRational& b) {
        return GaussianRational(a.re_ * b.re_ - a.im_ * b.im_,
                                a.re_ * b.im_ + a.im_ * b.re_);
    }
    friend GaussianRational operator/(const GaussianRational& a, const GaussianRational& b) {
        return a * b.inverse();
    }

    GaussianRational square() const {
        BigRational cross = re_ * im_;
        return GaussianRational(re_ * re_ - im_ * im_, cross + cross);
    }

    // z^e by binary powering; negative exponents go through the inverse.
    GaussianRational pow(const BigInt& e) const;

    friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
        return a.re_ == b.re_ && a.im_ == b.im_;
    }
    friend bool operator!=(const GaussianRational& a, const GaussianRational& b) {
        return !(a == b);
    }

    std::string str() const; // "re + im*i" rendering for diagnostics

private:
    BigRational re_, im_;
};

// The unit-circle point (b + i)/(b - i) for rational b = p/q:
//   ((p^2 - q^2) + 2pq i) / (p^2 + q^2).
// Multiplying these walks arctangent sums exactly.  b = 0 is rejected.
GaussianRational angle_base(const BigRational& b);

} // namespace machin
