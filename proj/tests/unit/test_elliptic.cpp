#include "doctest.h"

#include "cmheight/arith.hpp"
#include "cmheight/cm.hpp"
#include "cmheight/division_polynomial.hpp"
#include "cmheight/reduction.hpp"
#include "cmheight/torsion.hpp"

#include <random>
#include <set>

using namespace cmh;

namespace {

CurvePtr curve(long a1, long a2, long a3, long a4, long a6) {
    return EllipticCurve::over_Q({Rational(a1), Rational(a2), Rational(a3), Rational(a4), Rational(a6)});
}

CurvePoint pt(const CurvePtr& E, const Rational& x, const Rational& y) {
    auto Q = NumberField::rational();
    return CurvePoint(E, NFElement(Q, x), NFElement(Q, y));
}

NFElement rnd(std::mt19937_64& rng, const FieldPtr& K, long span) {
    std::uniform_int_distribution<long> num(-span, span);
    std::uniform_int_distribution<long> den(1, 4);
    std::vector<Rational> c;
    for (int i = 0; i < K->degree(); ++i) {
        Rational q(num(rng), den(rng));
        q.canonicalize();
        c.push_back(q);
    }
    return NFElement(K, c);
}

NFElement det3(const NFElement m[3][3]) {
    return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
           m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
           m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

// A random curve through three random points: the Weierstrass equation is
// linear in (a3, a4, a6) once a1, a2 are fixed.
bool random_curve_with_points(std::mt19937_64& rng, const FieldPtr& K, CurvePtr& E,
                              std::vector<CurvePoint>& P) {
    NFElement x[3], y[3];
    for (int i = 0; i < 3; ++i) {
        x[i] = rnd(rng, K, 6);
        y[i] = rnd(rng, K, 6);
    }
    const NFElement a1 = rnd(rng, K, 3), a2 = rnd(rng, K, 3);
    NFElement m[3][3], rhs[3];
    const NFElement one(K, Rational(1));
    for (int i = 0; i < 3; ++i) {
        m[i][0] = y[i];
        m[i][1] = -x[i];
        m[i][2] = -one;
        rhs[i] = x[i] * x[i] * x[i] + a2 * x[i] * x[i] - y[i] * y[i] - a1 * x[i] * y[i];
    }
    NFElement d = det3(m);
    if (d.is_zero()) return false;
    NFElement sol[3];
    for (int c = 0; c < 3; ++c) {
        NFElement mc[3][3];
        for (int i = 0; i < 3; ++i) {
            for (int k = 0; k < 3; ++k) mc[i][k] = (k == c) ? rhs[i] : m[i][k];
        }
        sol[c] = det3(mc) / d;
    }
    try {
        E = EllipticCurve::make(K, {a1, a2, sol[0], sol[1], sol[2]});
    } catch (const std::invalid_argument&) {
        return false;
    }
    P.clear();
    for (int i = 0; i < 3; ++i) P.emplace_back(E, x[i], y[i]);
    return true;
}

}  // namespace

TEST_CASE("curve invariants") {
    auto E = curve(0, 0, 0, -1, 0);
    CHECK(E->discriminant().rational_value() == 64);
    CHECK(E->rational_j() == 1728);
    CHECK(E->c4().rational_value() == 48);
    CHECK(E->b2().rational_value() == 0);
    CHECK(curve(0, 0, 0, 0, 1)->rational_j() == 0);
    CHECK_THROWS_WITH(curve(0, 0, 0, 0, 0), "singular model");
    // j·Δ = c4³ on a general model
    auto F = curve(1, -1, 1, -7, 10);
    CHECK(F->j_invariant() * F->discriminant() == F->c4() * F->c4() * F->c4());
    CHECK_THROWS(EllipticCurve::make(NumberField::cyclotomic(5),
                                     {NFElement(NumberField::cyclotomic(5), Rational(0)),
                                      NFElement(NumberField::cyclotomic(5), Rational(0)),
                                      NFElement(NumberField::cyclotomic(5), Rational(0)),
                                      NFElement(NumberField::cyclotomic(5), Rational(-1)),
                                      NFElement(NumberField::cyclotomic(5), Rational(0))}));
    auto G = EllipticCurve::parse("0;0;0;-25;0");
    CHECK(G->serialize() == "0;0;0;-25;0");
    CHECK(G->to_string() == "[0,0,0,-25,0]");
}

TEST_CASE("group law examples") {
    auto E = curve(0, 0, 0, -1, 0);
    auto T = pt(E, 0, 0);
    CHECK(point_add(T, T).is_infinity());
    auto O = CurvePoint::infinity(E);
    CHECK(point_add(T, O) == T);
    CHECK(point_add(O, T) == T);

    auto F = curve(0, 0, 0, -25, 0);
    auto P = pt(F, -4, 6);
    // tangent line on y² = x³ + a x + b, computed directly
    const Rational x(-4), y(6), a(-25);
    Rational lambda = (3 * x * x + a) / (2 * y);
    Rational x3 = lambda * lambda - 2 * x;
    Rational y3 = lambda * (x - x3) - y;
    auto D = point_double(P);
    CHECK(D.x().rational_value() == x3);
    CHECK(D.y().rational_value() == y3);
    CHECK(x3 == Rational(1681, 144));
    CHECK(y3 == Rational(-62279, 1728));
    CHECK(scalar_mul(Integer(2), P) == D);
    CHECK(scalar_mul(Integer(0), P).is_infinity());
    CHECK(scalar_mul(Integer(-3), P) == point_neg(scalar_mul(Integer(3), P)));
    CHECK_THROWS_WITH(point_add(P, T), "mixed curves");
    CHECK_THROWS_WITH(CurvePoint(F, NFElement(NumberField::rational(), Rational(1)),
                                 NFElement(NumberField::rational(), Rational(1))),
                      "point not on curve");

    auto Qi = NumberField::quadratic(-1);
    auto Pi = CurvePoint::parse(F, "(4,0),(0,6)", Qi);  // (4, 6i)
    CHECK(Pi.field()->degree() == 2);
    CHECK(CurvePoint::parse(F, "-4,6", NumberField::rational()) == P);
    CHECK(CurvePoint::parse(F, "inf", NumberField::rational()).is_infinity());
}

TEST_CASE("group law axioms on random triples") {
    std::mt19937_64 rng(20260101);
    for (const auto& K : {NumberField::rational(), NumberField::quadratic(-1)}) {
        int done = 0;
        while (done < 1000) {
            CurvePtr E;
            std::vector<CurvePoint> P;
            if (!random_curve_with_points(rng, K, E, P)) continue;
            const auto &A = P[0], &B = P[1], &C = P[2];
            CHECK(point_add(point_add(A, B), C) == point_add(A, point_add(B, C)));
            CHECK(point_add(A, B) == point_add(B, A));
            CHECK(point_add(A, point_neg(A)).is_infinity());
            CHECK(point_sub(point_add(A, B), B) == A);
            ++done;
        }
    }
}

TEST_CASE("scalar multiplication composes") {
    // small canonical height keeps 400·P manageable
    auto F = curve(0, 0, 1, -1, 0);
    auto P = pt(F, 0, 0);
    std::vector<CurvePoint> mult;
    CurvePoint acc = scalar_mul(Integer(-400), P);
    for (long k = -400; k <= 400; ++k) {
        mult.push_back(acc);
        acc = point_add(acc, P);
    }
    auto at = [&](long k) { return mult[static_cast<std::size_t>(k + 400)]; };
    for (long m = -20; m <= 20; ++m) {
        for (long n = -20; n <= 20; ++n) {
            CHECK(scalar_mul(Integer(m), at(n)) == at(m * n));
        }
    }
    for (long k = -50; k < 50; ++k) CHECK(point_add(at(k), P) == at(k + 1));
}

TEST_CASE("division polynomials") {
    auto E = curve(0, 0, 0, -1, 0);
    CHECK(division_polynomial(*E, 1) == RatPoly::constant(1));
    CHECK(division_polynomial(*E, 2) == RatPoly{Rational(0), Rational(-4), Rational(0), Rational(4)});
    auto F = curve(0, 0, 0, 0, 1);
    CHECK(division_polynomial(*F, 3) == RatPoly{Rational(0), Rational(12), Rational(0), Rational(0), Rational(3)});
    // ψ₃ = 3x⁴ + 6ax² + 12bx − a² on y² = x³ + ax + b
    auto G = curve(0, 0, 0, -25, 7);
    CHECK(division_polynomial(*G, 3) ==
          RatPoly{Rational(-625), Rational(84), Rational(-150), Rational(0), Rational(3)});
    // degree of the x-polynomial of exact order n points
    for (int n = 2; n <= 9; ++n) {
        const int deg = division_polynomial(*G, n).degree();
        CHECK(deg == (n % 2 ? (n * n - 1) / 2 : (n * n - 4) / 2 + 3));
    }
}

TEST_CASE("division polynomial roots are torsion points") {
    std::vector<CurvePtr> curves = {cm_representative_curve(Rational(1728)), cm_representative_curve(Rational(0)),
                                    cm_representative_curve(Rational(-3375)),
                                    cm_representative_curve(Rational(8000))};
    for (const auto& E : curves) {
        for (int n = 2; n <= 7; ++n) {
            auto pts = low_degree_torsion_points(E, n);
            for (const auto& P : pts) {
                CHECK(scalar_mul(Integer(n), P).is_infinity());
                for (int d = 1; d < n; ++d) {
                    if (n % d == 0) CHECK_FALSE(scalar_mul(Integer(d), P).is_infinity());
                }
            }
        }
    }
    // the full rational 2-torsion of y² = x³ − x and the 3-torsion of y² = x³ + 1
    auto pts2 = low_degree_torsion_points(curves[0], 2);
    std::set<std::string> xs;
    for (const auto& P : pts2) {
        if (P.field()->degree() == 1) xs.insert(P.x().to_string());
    }
    CHECK(xs == std::set<std::string>{"-1", "0", "1"});
    auto pts3 = low_degree_torsion_points(curves[1], 3);
    int rational3 = 0;
    for (const auto& P : pts3) rational3 += P.field()->degree() == 1;
    CHECK(rational3 == 2);
}

TEST_CASE("torsion test") {
    auto E = curve(0, 0, 0, -1, 0);
    auto r1 = torsion_test(pt(E, 0, 0));
    CHECK(r1.torsion);
    CHECK(r1.order == 2);
    auto F = curve(0, 0, 0, 0, 1);
    auto r2 = torsion_test(pt(F, 2, 3));
    CHECK(r2.torsion);
    CHECK(r2.order == 6);
    // multiples up to 12 never vanish: Mazur's bound over ℚ
    auto G = curve(0, 0, 0, -25, 0);
    auto P = pt(G, -4, 6);
    for (long k = 1; k <= 12; ++k) CHECK_FALSE(scalar_mul(Integer(k), P).is_infinity());
    auto r3 = torsion_test(P);
    CHECK_FALSE(r3.torsion);
    CHECK(r3.order == 0);
    CHECK(r3.primes_used.size() >= 2);

    // agreement with the exact order on division-polynomial points, including
    // points over quadratic fields
    for (const auto& j : {Rational(0), Rational(1728), Rational(-3375)}) {
        auto C = cm_representative_curve(j);
        for (int n = 2; n <= 6; ++n) {
            for (const auto& Q : low_degree_torsion_points(C, n)) {
                auto r = torsion_test(Q);
                CHECK(r.torsion);
                CHECK(r.order == n);
            }
        }
    }
    // curve over ℚ(i) with a point in the same field
    auto Qi = NumberField::quadratic(-1);
    auto Ei = EllipticCurve::make(Qi, {NFElement(Qi), NFElement(Qi), NFElement(Qi),
                                       NFElement(Qi, Rational(-1)), NFElement(Qi)});
    auto ri = torsion_test(CurvePoint(Ei, NFElement(Qi, Rational(0)), NFElement(Qi, Rational(0))));
    CHECK(ri.torsion);
    CHECK(ri.order == 2);
    auto Gi = EllipticCurve::make(Qi, {NFElement(Qi), NFElement(Qi), NFElement(Qi),
                                       NFElement(Qi, Rational(-25)), NFElement(Qi)});
    auto rg = torsion_test(CurvePoint(Gi, NFElement(Qi, Rational(-4)), NFElement(Qi, Rational(6))));
    CHECK_FALSE(rg.torsion);
}

TEST_CASE("reduction over Q") {
    auto E = curve(0, 0, 0, -1, 0);
    auto r5 = reduction_over_Q(*E, 5);
    CHECK(r5.kind == ReductionKind::Good);
    CHECK(r5.disc_valuation == 0);
    auto r2 = reduction_over_Q(*E, 2);
    CHECK(r2.kind == ReductionKind::Additive);
    CHECK(r2.input_minimal);
    CHECK(r2.disc_valuation == 6);
    auto F = curve(0, 0, 0, 0, 1);
    CHECK(reduction_over_Q(*F, 3).kind == ReductionKind::Additive);
    // 11a: Δ = −11⁵, c4 a unit at 11
    auto M = curve(0, -1, 1, -10, -20);
    auto r11 = reduction_over_Q(*M, 11);
    CHECK(r11.kind == ReductionKind::Multiplicative);
    CHECK(r11.disc_valuation == 5);
    // non-minimal scalings of y² = x³ − x
    auto S5 = curve(0, 0, 0, -625, 0);
    auto s5 = reduction_over_Q(*S5, 5);
    CHECK_FALSE(s5.input_minimal);
    CHECK(s5.kind == ReductionKind::Good);
    auto S2 = curve(0, 0, 0, -16, 0);
    auto s2 = reduction_over_Q(*S2, 2);
    CHECK_FALSE(s2.input_minimal);
    CHECK(s2.disc_valuation == 6);
    // non-integral input
    auto N = EllipticCurve::over_Q({Rational(0), Rational(0), Rational(0), Rational(-1, 16), Rational(0)});
    auto n2 = reduction_over_Q(*N, 2);
    CHECK_FALSE(n2.input_minimal);
    CHECK(n2.disc_valuation == 6);

    // transformed models keep j and scale Δ by u^{-12}; points map onto the new model
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<long> d(-5, 5);
    auto G = curve(0, 0, 0, -25, 0);
    auto P = pt(G, -4, 6);
    for (int it = 0; it < 200; ++it) {
        ModelChange w;
        w.u = Rational(d(rng) == 0 ? 1 : d(rng) + 6, 1 + (it % 3));
        w.u.canonicalize();
        if (w.u == 0) continue;
        w.r = d(rng);
        w.s = d(rng);
        w.t = Rational(d(rng), 2);
        w.t.canonicalize();
        auto a = transform_a(G->rational_a(), w);
        auto H = EllipticCurve::over_Q(a);
        CHECK(H->rational_j() == G->rational_j());
        Rational u12 = 1;
        for (int k = 0; k < 12; ++k) u12 *= w.u;
        CHECK(H->discriminant().rational_value() * u12 == G->discriminant().rational_value());
        auto [x, y] = transform_point(P.x(), P.y(), w);
        CHECK(H->contains(x, y));
    }
    // the p-minimal model is integral with v(Δ) reduced by a multiple of 12
    for (const auto& C : {S5, S2, N, M, G}) {
        for (const auto& p : candidate_bad_primes(*C)) {
            auto rd = reduction_over_Q(*C, p);
            for (const auto& a : rd.minimal_a) {
                if (a != 0) CHECK(valuation(a, p) >= 0);
            }
            long vin = valuation(C->discriminant().rational_value(), p);
            CHECK((vin - rd.disc_valuation) % 12 == 0);
            CHECK(rd.disc_valuation < 12 + (p <= 3 ? 12 : 0));
        }
    }
}

TEST_CASE("CM dictionary") {
    CHECK(cm_lookup(Rational(1728)).field_disc == -4);
    CHECK(cm_lookup(Rational(0)).field_disc == -3);
    CHECK_THROWS_WITH(cm_lookup(Rational(5)), "not a rational CM j-invariant");
    CHECK(cm_table().size() == 13);

    // class number one discriminants by counting reduced forms
    auto class_number = [](long D) {
        long h = 0;
        for (long a = 1; 3 * a * a <= -D; ++a) {
            for (long b = -a + 1; b <= a; ++b) {
                long num = b * b - D;
                if (num % (4 * a)) continue;
                long c = num / (4 * a);
                if (c < a) continue;
                if (c == a && b < 0) continue;
                if (std::gcd(std::gcd(a, std::labs(b)), c) != 1) continue;
                ++h;
            }
        }
        return h;
    };
    std::set<long> h1;
    for (long D = -3; D >= -200; --D) {
        if (((D % 4) + 4) % 4 > 1) continue;
        if (class_number(D) == 1) h1.insert(D);
    }
    std::set<long> table;
    for (const auto& d : cm_table()) table.insert(d.order_disc.get_si());
    CHECK(h1 == table);

    // j from the q-expansion at the reduced CM point, τ = (b + √D)/2 with q real
    for (const auto& d : cm_table()) {
        const long D = d.order_disc.get_si();
        const long prec = 400;
        RealInterval piv = RealInterval::pi(prec);
        RealInterval q = exp(-(piv * sqrt(RealInterval(Rational(-D), prec))));
        if (D % 2) q = -q;
        RealInterval E4(Rational(1), prec), E6(Rational(1), prec);
        RealInterval qn(Rational(1), prec);
        for (long n = 1; n <= 120; ++n) {
            qn = qn * q;
            Integer s3 = 0, s5 = 0;
            for (long k = 1; k <= n; ++k) {
                if (n % k == 0) {
                    Integer kk = k;
                    s3 += kk * kk * kk;
                    s5 += kk * kk * kk * kk * kk;
                }
            }
            E4 = E4 + qn * Rational(240 * s3);
            E6 = E6 - qn * Rational(504 * s5);
        }
        RealInterval e43 = E4 * E4 * E4;
        RealInterval j = e43 * Rational(1728) / (e43 - E6 * E6);
        CHECK(abs(j - RealInterval(d.j, prec)).certainly_less(RealInterval(Rational(1, 1000), prec)));
        // the representative curve has this j and CM discriminant
        auto C = cm_representative_curve(d.j);
        CHECK(C->rational_j() == d.j);
        CHECK(d.conductor * d.conductor * d.field_disc == d.order_disc);
    }
}
