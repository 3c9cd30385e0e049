#include "cmheight/complex_ball.hpp"

#include <cmath>

namespace cmh {

double ComplexBall::rad_double() const {
    const double a = re_.rad_double();
    const double b = im_.rad_double();
    return std::nextafter(std::hypot(a, b), INFINITY);
}

bool ComplexBall::is_real() const {
    return mpfr_zero_p(im_.lower().get()) && mpfr_zero_p(im_.upper().get());
}

std::string ComplexBall::to_string(int digits) const {
    return "(" + re_.to_string(digits) + ") + (" + im_.to_string(digits) + ")i";
}

ComplexBall operator+(const ComplexBall& a, const ComplexBall& b) {
    return ComplexBall(a.re() + b.re(), a.im() + b.im());
}

ComplexBall operator-(const ComplexBall& a, const ComplexBall& b) {
    return ComplexBall(a.re() - b.re(), a.im() - b.im());
}

ComplexBall operator*(const ComplexBall& a, const ComplexBall& b) {
    return ComplexBall(a.re() * b.re() - a.im() * b.im(), a.re() * b.im() + a.im() * b.re());
}

ComplexBall operator/(const ComplexBall& a, const ComplexBall& b) {
    RealInterval n = norm_sq(b);
    if (n.contains_zero()) throw std::domain_error("division by a complex ball containing zero");
    ComplexBall num = a * b.conj();
    return ComplexBall(num.re() / n, num.im() / n);
}

ComplexBall operator*(const ComplexBall& a, const RealInterval& b) {
    return ComplexBall(a.re() * b, a.im() * b);
}

ComplexBall operator*(const ComplexBall& a, const Rational& b) {
    return ComplexBall(a.re() * b, a.im() * b);
}

ComplexBall operator+(const ComplexBall& a, const Rational& b) {
    return ComplexBall(a.re() + b, a.im());
}

RealInterval norm_sq(const ComplexBall& a) { return sqr(a.re()) + sqr(a.im()); }

RealInterval abs(const ComplexBall& a) { return sqrt(norm_sq(a)); }

ComplexBall sqr(const ComplexBall& a) {
    return ComplexBall(sqr(a.re()) - sqr(a.im()), a.re() * a.im() * 2L);
}

ComplexBall exp(const ComplexBall& a) {
    RealInterval m = exp(a.re());
    return ComplexBall(m * cos(a.im()), m * sin(a.im()));
}

ComplexBall exp_2pi_i(const ComplexBall& z) {
    RealInterval two_pi = RealInterval::pi(z.precision()) * 2L;
    return exp(ComplexBall(-(z.im() * two_pi), z.re() * two_pi));
}

}  // namespace cmh

namespace cmh {

ComplexBall midpoint(const ComplexBall& a) {
    BigFloat r = a.re().mid(), i = a.im().mid();
    return ComplexBall(RealInterval(r, r), RealInterval(i, i));
}

ComplexBall make_ball(double re, double im, mpfr_prec_t prec) {
    return ComplexBall(RealInterval::from_double(re, prec), RealInterval::from_double(im, prec));
}

namespace {

// atan2 over the box via its four corners; the box must avoid 0 and the cut.
RealInterval arg_no_cut(const ComplexBall& a) {
    const mpfr_prec_t prec = a.precision();
    BigFloat lo(prec), hi(prec), t(prec);
    bool first = true;
    for (int ci = 0; ci < 2; ++ci) {
        for (int cj = 0; cj < 2; ++cj) {
            const BigFloat& y = ci ? a.im().upper() : a.im().lower();
            const BigFloat& x = cj ? a.re().upper() : a.re().lower();
            mpfr_atan2(t.get(), y.get(), x.get(), MPFR_RNDD);
            if (first || mpfr_less_p(t.get(), lo.get())) mpfr_set(lo.get(), t.get(), MPFR_RNDD);
            mpfr_atan2(t.get(), y.get(), x.get(), MPFR_RNDU);
            if (first || mpfr_greater_p(t.get(), hi.get())) mpfr_set(hi.get(), t.get(), MPFR_RNDU);
            first = false;
        }
    }
    return RealInterval(lo, hi);
}

}  // namespace

RealInterval arg(const ComplexBall& a) {
    if (a.contains_zero()) throw std::domain_error("arg of a ball containing zero");
    if (a.re().certainly_positive() || !a.im().contains_zero()) return arg_no_cut(a);
    if (!a.re().certainly_negative()) throw std::domain_error("arg: ball too wide");
    return arg_no_cut(-a) + RealInterval::pi(a.precision());
}

ComplexBall log(const ComplexBall& a) {
    return ComplexBall(log(norm_sq(a)) / 2L, arg(a));
}

ComplexBall root(const ComplexBall& a, unsigned k) {
    ComplexBall l = log(a);
    return exp(ComplexBall(l.re() / static_cast<long>(k), l.im() / static_cast<long>(k)));
}

bool strictly_inside(const ComplexBall& inner, const ComplexBall& outer) {
    auto in = [](const RealInterval& i, const RealInterval& o) {
        return mpfr_greater_p(i.lower().get(), o.lower().get()) && mpfr_less_p(i.upper().get(), o.upper().get());
    };
    return in(inner.re(), outer.re()) && in(inner.im(), outer.im());
}

}  // namespace cmh
