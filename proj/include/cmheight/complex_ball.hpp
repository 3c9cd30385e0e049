#pragma once

#include "cmheight/real_interval.hpp"

#include <algorithm>

namespace cmh {

/// Rectangle re × im of two real intervals.
class ComplexBall {
public:
    explicit ComplexBall(mpfr_prec_t prec = kDefaultPrecision) : re_(prec), im_(prec) {}
    ComplexBall(RealInterval re, RealInterval im) : re_(std::move(re)), im_(std::move(im)) {}
    explicit ComplexBall(const RealInterval& re) : re_(re), im_(0L, re.precision()) {}
    ComplexBall(const Rational& re, const Rational& im, mpfr_prec_t prec)
        : re_(re, prec), im_(im, prec) {}

    const RealInterval& re() const { return re_; }
    const RealInterval& im() const { return im_; }
    mpfr_prec_t precision() const { return std::max(re_.precision(), im_.precision()); }

    /// Upper bound on the distance from the centre to any point of the box.
    double rad_double() const;
    bool contains_zero() const { return re_.contains_zero() && im_.contains_zero(); }
    bool overlaps(const ComplexBall& o) const {
        return re_.overlaps(o.re_) && im_.overlaps(o.im_);
    }
    bool is_real() const;  // imaginary part exactly zero

    ComplexBall conj() const { return ComplexBall(re_, -im_); }
    ComplexBall operator-() const { return ComplexBall(-re_, -im_); }
    ComplexBall widened(const RealInterval& r) const {
        return ComplexBall(re_.widened(r), im_.widened(r));
    }
    ComplexBall with_precision(mpfr_prec_t prec) const {
        return ComplexBall(re_.with_precision(prec), im_.with_precision(prec));
    }

    std::string to_string(int digits = 15) const;

private:
    RealInterval re_;
    RealInterval im_;
};

ComplexBall operator+(const ComplexBall& a, const ComplexBall& b);
ComplexBall operator-(const ComplexBall& a, const ComplexBall& b);
ComplexBall operator*(const ComplexBall& a, const ComplexBall& b);
ComplexBall operator/(const ComplexBall& a, const ComplexBall& b);
ComplexBall operator*(const ComplexBall& a, const RealInterval& b);
ComplexBall operator*(const ComplexBall& a, const Rational& b);
ComplexBall operator+(const ComplexBall& a, const Rational& b);

RealInterval norm_sq(const ComplexBall& a);
RealInterval abs(const ComplexBall& a);
ComplexBall sqr(const ComplexBall& a);
ComplexBall exp(const ComplexBall& a);
/// exp(2πi·z)
ComplexBall exp_2pi_i(const ComplexBall& z);

}  // namespace cmh

namespace cmh {

/// Zero-radius ball at the centre of a.
ComplexBall midpoint(const ComplexBall& a);
ComplexBall make_ball(double re, double im, mpfr_prec_t prec);
/// An argument branch continuous on the box; requires 0 ∉ a. The value lies
/// in (−π, π] unless the box crosses the negative real axis, in which case it
/// lies in (0, 2π).
RealInterval arg(const ComplexBall& a);
ComplexBall log(const ComplexBall& a);
/// exp(log(a)/k) with the branch of arg().
ComplexBall root(const ComplexBall& a, unsigned k);
/// Box contained in the interior of the other.
bool strictly_inside(const ComplexBall& inner, const ComplexBall& outer);

}  // namespace cmh
