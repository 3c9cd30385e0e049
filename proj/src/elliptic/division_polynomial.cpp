#include "cmheight/division_polynomial.hpp"

#include "cmheight/arith.hpp"
#include "cmheight/roots.hpp"

#include <algorithm>
#include <set>

namespace cmh {

namespace {

void require_Q(const EllipticCurve& E) {
    if (!E.over_rationals()) throw std::domain_error("division polynomials need a curve over Q");
}

RatPoly pw(const RatPoly& p, int k) {
    RatPoly r = RatPoly::constant(1);
    for (int i = 0; i < k; ++i) r = r * p;
    return r;
}

}  // namespace

std::vector<RatPoly> division_recurrence(const EllipticCurve& E, int n) {
    require_Q(E);
    if (n < 0) throw std::invalid_argument("division polynomial index must be >= 0");
    const Rational b2 = E.b2().rational_value(), b4 = E.b4().rational_value();
    const Rational b6 = E.b6().rational_value(), b8 = E.b8().rational_value();
    const RatPoly F{b6, Rational(2 * b4), b2, Rational(4)};
    const RatPoly F2 = F * F;
    std::vector<RatPoly> f;
    f.push_back(RatPoly());
    f.push_back(RatPoly::constant(1));
    f.push_back(RatPoly::constant(1));
    f.push_back(RatPoly{b8, Rational(3 * b6), Rational(3 * b4), b2, Rational(3)});
    f.push_back(RatPoly{Rational(b4 * b8 - b6 * b6), Rational(b2 * b8 - b4 * b6), Rational(10 * b8),
                        Rational(10 * b6), Rational(5 * b4), b2, Rational(2)});
    for (int k = 5; k <= n; ++k) {
        const int m = k / 2;
        const auto& fm = f[static_cast<std::size_t>(m)];
        if (k % 2) {
            const auto& a = f[static_cast<std::size_t>(m + 2)];
            const auto& b = f[static_cast<std::size_t>(m - 1)];
            const auto& c = f[static_cast<std::size_t>(m + 1)];
            if (m % 2 == 0) {
                f.push_back(F2 * a * pw(fm, 3) - b * pw(c, 3));
            } else {
                f.push_back(a * pw(fm, 3) - F2 * b * pw(c, 3));
            }
        } else {
            const auto& a = f[static_cast<std::size_t>(m + 2)];
            const auto& b = f[static_cast<std::size_t>(m - 1)];
            const auto& c = f[static_cast<std::size_t>(m - 2)];
            const auto& d = f[static_cast<std::size_t>(m + 1)];
            f.push_back(fm * (a * b * b - c * d * d));
        }
    }
    f.resize(static_cast<std::size_t>(n) + 1);
    return f;
}

RatPoly division_polynomial(const EllipticCurve& E, int n) {
    if (n < 1) throw std::invalid_argument("division polynomial index must be >= 1");
    auto f = division_recurrence(E, n);
    if (n % 2) return f[static_cast<std::size_t>(n)];
    const RatPoly F{E.b6().rational_value(), Rational(2 * E.b4().rational_value()),
                    E.b2().rational_value(), Rational(4)};
    return F * f[static_cast<std::size_t>(n)];
}

RatPoly primitive_division_polynomial(const EllipticCurve& E, int n) {
    if (n < 2) throw std::invalid_argument("exact order must be >= 2");
    RatPoly g = to_rat(squarefree_part(primitive_integer(division_polynomial(E, n))));
    for (int d = 2; d < n; ++d) {
        if (n % d) continue;
        RatPoly h = gcd(g, division_polynomial(E, d));
        if (h.degree() > 0) g = divmod(g, h).first;
    }
    return monic(g);
}

namespace {

// Candidate rationals near an interval via continued-fraction convergents.
std::vector<Rational> convergents(const RealInterval& v, const Integer& max_den) {
    BigFloat m = v.mid();
    Rational x;
    mpfr_get_q(x.get_mpq_t(), m.get());
    std::vector<Rational> out;
    Integer h0 = 0, h1 = 1, k0 = 1, k1 = 0;
    for (int it = 0; it < 200; ++it) {
        Integer a;
        mpz_fdiv_q(a.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
        Integer h2 = a * h1 + h0, k2 = a * k1 + k0;
        if (k2 > max_den) break;
        out.emplace_back(h2, k2);
        h0 = h1;
        h1 = h2;
        k0 = k1;
        k1 = k2;
        Rational frac = x - a;
        if (frac == 0) break;
        x = 1 / frac;
    }
    return out;
}

void add_points_over(const CurvePtr& E, const NFElement& x, std::vector<CurvePoint>& out) {
    const FieldPtr& K = x.field();
    NFElement lin = E->a1().coerce_to(K) * x + E->a3().coerce_to(K);
    NFElement delta = E->two_torsion_cubic(x);
    NFElement s;
    if (sqrt_in_field(delta, &s)) {
        out.emplace_back(E, x, (s - lin) * Rational(1, 2));
        if (!s.is_zero()) out.emplace_back(E, x, (-s - lin) * Rational(1, 2));
        return;
    }
    if (!x.is_rational()) return;  // y would need a degree-4 field
    const Rational d = delta.rational_value();
    Integer core = squarefree_core(Integer(d.get_num() * d.get_den()));
    auto L = NumberField::quadratic(core);
    Rational k;
    if (!is_square(Rational(d / core), &k)) throw std::logic_error("square class mismatch");
    NFElement xL = x.coerce_to(L);
    NFElement linL = lin.coerce_to(L);
    NFElement root(L, {Rational(0), k});
    out.emplace_back(E, xL, (root - linL) * Rational(1, 2));
    out.emplace_back(E, xL, (-root - linL) * Rational(1, 2));
}

}  // namespace

std::vector<CurvePoint> low_degree_torsion_points(const CurvePtr& E, int n) {
    require_Q(*E);
    const auto Q = NumberField::rational();
    IntPoly g = primitive_integer(primitive_division_polynomial(*E, n));
    RatPoly gr = to_rat(g);
    const Integer max_den = Integer(1) << 64;
    auto roots = isolate_complex_roots(g, Rational(1, Integer(1) << 200));
    std::vector<NFElement> xs;
    std::vector<bool> used(roots.size(), false);
    // rational roots
    for (std::size_t i = 0; i < roots.size(); ++i) {
        if (!roots[i].is_real()) continue;
        for (const auto& c : convergents(roots[i].re(), max_den)) {
            if (roots[i].re().contains(c) && gr.eval(c) == 0) {
                xs.emplace_back(Q, c);
                used[i] = true;
                break;
            }
        }
    }
    // quadratic factors x² − s x + p from root pairs
    std::set<std::pair<Rational, Rational>> seen;
    for (std::size_t i = 0; i < roots.size(); ++i) {
        if (used[i]) continue;
        for (std::size_t j = i + 1; j < roots.size(); ++j) {
            if (used[j]) continue;
            ComplexBall sum = roots[i] + roots[j];
            ComplexBall prod = roots[i] * roots[j];
            if (!sum.im().contains_zero() || !prod.im().contains_zero()) continue;
            for (const auto& s : convergents(sum.re(), max_den)) {
                if (!sum.re().contains(s)) continue;
                for (const auto& p : convergents(prod.re(), max_den)) {
                    if (!prod.re().contains(p)) continue;
                    RatPoly quad{Rational(p), Rational(-s), Rational(1)};
                    if (!(gr % quad).is_zero()) continue;
                    Rational disc = s * s - 4 * p;
                    if (disc == 0 || is_square(disc)) continue;
                    if (!seen.insert({s, p}).second) continue;
                    Integer D = squarefree_core(Integer(disc.get_num() * disc.get_den()));
                    Rational k;
                    is_square(Rational(disc / D), &k);
                    auto L = NumberField::quadratic(D);
                    xs.emplace_back(L, std::vector<Rational>{Rational(s / 2), Rational(k / 2)});
                    xs.emplace_back(L, std::vector<Rational>{Rational(s / 2), Rational(-k / 2)});
                    used[i] = used[j] = true;
                }
                if (used[i]) break;
            }
            if (used[i]) break;
        }
    }
    std::vector<CurvePoint> out;
    for (const auto& x : xs) add_points_over(E, x, out);
    std::sort(out.begin(), out.end(), [](const CurvePoint& a, const CurvePoint& b) {
        const std::string fa = a.field()->descriptor(), fb = b.field()->descriptor();
        if (fa != fb) return fa < fb;
        return a.to_string() < b.to_string();
    });
    return out;
}

}  // namespace cmh
