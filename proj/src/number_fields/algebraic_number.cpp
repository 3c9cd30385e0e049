#include "cmheight/algebraic_number.hpp"

#include "cmheight/roots.hpp"

namespace cmh {

AlgebraicNumber::AlgebraicNumber(IntPoly minpoly, ComplexBall root)
    : minpoly_(std::move(minpoly)), root_(std::move(root)) {
    if (minpoly_.degree() < 1) throw std::invalid_argument("minimal polynomial must have degree >= 1");
}

AlgebraicNumber AlgebraicNumber::from_rational(const Rational& q) {
    IntPoly m = primitive_part(IntPoly{Integer(-q.get_num()), q.get_den()});
    return AlgebraicNumber(std::move(m), ComplexBall(RealInterval(q, kDefaultPrecision)));
}

AlgebraicNumber AlgebraicNumber::from_element(const NFElement& a, const PlaceData& place) {
    if (a.is_rational()) return from_rational(a.rational_value());
    IntPoly m = cmh::minimal_polynomial(a);
    for (mpfr_prec_t prec = 64; prec <= kMaxPrecision; prec *= 2) {
        ComplexBall z = embed(a, place, prec);
        Rational tol(1);
        mpz_mul_2exp(tol.get_den_mpz_t(), tol.get_den_mpz_t(), static_cast<mp_bitcnt_t>(prec / 2));
        auto roots = isolate_complex_roots(m, tol);
        int hit = -1;
        int count = 0;
        for (std::size_t i = 0; i < roots.size(); ++i) {
            if (roots[i].overlaps(z)) {
                hit = static_cast<int>(i);
                ++count;
            }
        }
        if (count == 1) return AlgebraicNumber(m, roots[static_cast<std::size_t>(hit)]);
    }
    throw PrecisionExhausted();
}

AlgebraicNumber AlgebraicNumber::from_element(const NFElement& a) {
    if (a.is_rational()) return from_rational(a.rational_value());
    IntPoly m = cmh::minimal_polynomial(a);
    auto roots = isolate_complex_roots(m, Rational(1, 1 << 20));
    return AlgebraicNumber(m, roots.front());
}

AlgebraicNumber AlgebraicNumber::refined(const Rational& target) const {
    if (minpoly_.degree() == 1) {
        Rational q(-minpoly_.coeff(0), minpoly_.coeff(1));
        q.canonicalize();
        mpfr_prec_t prec = 64;
        while (RealInterval(q, prec).rad_double() > target.get_d() && prec < kMaxPrecision) prec *= 2;
        return AlgebraicNumber(minpoly_, ComplexBall(RealInterval(q, prec)));
    }
    // The box holding our root always overlaps root_; accept once it is the only one.
    for (Rational t = target; t > Rational(1, Integer(1) << 4000); t /= 1024) {
        auto roots = isolate_complex_roots(minpoly_, t);
        const ComplexBall* hit = nullptr;
        int count = 0;
        for (const auto& r : roots) {
            if (r.overlaps(root_)) {
                hit = &r;
                ++count;
            }
        }
        if (count == 1) return AlgebraicNumber(minpoly_, *hit);
    }
    throw PrecisionExhausted();
}

}  // namespace cmh
