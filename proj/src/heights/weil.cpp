#include "cmheight/heights.hpp"

#include "cmheight/roots.hpp"

namespace cmh {

namespace {

Integer larger_abs(const Integer& a, const Integer& b) {
    Integer x = abs(a), y = abs(b);
    return x > y ? x : y;
}

}  // namespace

std::string to_string(HeightMethod m) { return m == HeightMethod::Doubling ? "doubling" : "local_sum"; }

RealInterval weil_height(const AlgebraicNumber& a, double tol) {
    const IntPoly& f = a.minimal_polynomial();
    const int d = f.degree();
    mpfr_prec_t prec = precision_for_tolerance(tol);
    for (;;) {
        if (d == 1) {
            // root −c0/c1 in lowest terms
            Rational r(-f.coeff(0), f.coeff(1));
            r.canonicalize();
            Integer m = larger_abs(r.get_num(), r.get_den());
            return log(m, prec);
        }
        // |log max(1,|z|)| changes by at most the box radius for |z| ≥ ½
        Rational target(1, Integer(1) << static_cast<unsigned long>(prec - 32));
        auto roots = isolate_complex_roots(f, target);
        RealInterval sum = log(Integer(abs(f.leading())), prec);
        const RealInterval one(1L, prec);
        for (const auto& z : roots) sum += log(max(one, abs(z.with_precision(prec))));
        RealInterval h = sum / static_cast<long>(d);
        if (h.rad_double() <= tol) return h;
        prec *= 2;
        if (prec > kMaxPrecision) throw PrecisionExhausted();
    }
}

RealInterval weil_height(const NFElement& a, double tol) {
    if (a.is_rational()) {
        const Rational q = a.rational_value();
        if (q == 0) return RealInterval(0L, precision_for_tolerance(tol));
        Integer m = larger_abs(q.get_num(), q.get_den());
        return log(m, precision_for_tolerance(tol));
    }
    return weil_height(AlgebraicNumber(minimal_polynomial(a), ComplexBall()), tol);
}

}  // namespace cmh
