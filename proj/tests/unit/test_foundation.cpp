#include "doctest.h"

#include "cmheight/arith.hpp"
#include "cmheight/resultant.hpp"
#include "cmheight/roots.hpp"

#include <random>

using namespace cmh;

namespace {

Rational random_rational(std::mt19937_64& rng, long span = 1000000) {
    std::uniform_int_distribution<long> num(-span, span);
    std::uniform_int_distribution<long> den(1, span);
    Rational q(num(rng), den(rng));
    q.canonicalize();
    return q;
}

IntPoly random_poly(std::mt19937_64& rng, int deg, long span = 9) {
    std::uniform_int_distribution<long> c(-span, span);
    std::vector<Integer> v;
    for (int i = 0; i <= deg; ++i) v.emplace_back(c(rng));
    if (v.back() == 0) v.back() = 1;
    return IntPoly(v);
}

// Rational bisection on a sign change: independent of the Aberth iteration.
Rational bisect(const IntPoly& p, Rational lo, Rational hi, int steps) {
    RatPoly rp = to_rat(p);
    int slo = sgn(rp.eval(lo));
    for (int i = 0; i < steps; ++i) {
        Rational mid = (lo + hi) / 2;
        int s = sgn(rp.eval(mid));
        if (s == 0) return mid;
        if (s == slo) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return (lo + hi) / 2;
}

}  // namespace

TEST_CASE("interval arithmetic encloses exact rational results") {
    std::mt19937_64 rng(12345);
    for (int i = 0; i < 100000; ++i) {
        Rational a = random_rational(rng);
        Rational b = random_rational(rng);
        const mpfr_prec_t prec = 24 + static_cast<mpfr_prec_t>(i % 5) * 20;
        RealInterval A(a, prec), B(b, prec);
        REQUIRE((A + B).contains(Rational(a + b)));
        REQUIRE((A - B).contains(Rational(a - b)));
        REQUIRE((A * B).contains(Rational(a * b)));
        if (b != 0) REQUIRE((A / B).contains(Rational(a / b)));
    }
}

TEST_CASE("interval elementary functions") {
    RealInterval two(2L, 200);
    RealInterval s = sqrt(two);
    CHECK(sqr(s).contains(Rational(2)));
    CHECK(s.contains(Rational(141421356237, 100000000000)) == false);
    CHECK(std::abs(s.mid_double() - 1.4142135623730951) < 1e-15);
    CHECK(exp(log(two)).contains(Rational(2)));
    RealInterval pi = RealInterval::pi(128);
    CHECK(sin(pi).contains_zero());
    CHECK(cos(pi).contains(Rational(-1)));
    CHECK_THROWS_AS(RealInterval(1L, 64) / RealInterval::ball(0, Rational(1, 10), 64), std::domain_error);
    CHECK(pow(RealInterval(3L, 64), 5).contains(Rational(243)));
    CHECK(log(Rational(1, 8), 128).contains_zero() == false);
    CHECK(std::abs((log(Rational(1, 8), 128) / RealInterval::log2(128)).mid_double() + 3) < 1e-30);
}

TEST_CASE("complex ball arithmetic") {
    ComplexBall i(Rational(0), Rational(1), 128);
    ComplexBall m = i * i;
    CHECK(m.re().contains(Rational(-1)));
    CHECK(m.im().contains(Rational(0)));
    ComplexBall q = ComplexBall(Rational(3), Rational(4), 128) / ComplexBall(Rational(1), Rational(2), 128);
    CHECK(q.re().contains(Rational(11, 5)));
    CHECK(q.im().contains(Rational(-2, 5)));
    CHECK(abs(ComplexBall(Rational(3), Rational(4), 128)).contains(Rational(5)));
    ComplexBall e = exp_2pi_i(ComplexBall(Rational(1, 4), Rational(0), 128));
    CHECK(e.re().contains_zero());
    CHECK(e.im().contains(Rational(1)));
}

TEST_CASE("polynomial basics") {
    IntPoly p{-2, 0, 1};
    CHECK(p.degree() == 2);
    CHECK(p.eval(3) == 7);
    CHECK(p.derivative() == IntPoly{0, 2});
    CHECK(p.to_string() == "x^2 - 2");
    RatPoly a = to_rat(IntPoly{-1, 0, 1});
    RatPoly b = to_rat(IntPoly{1, 1});
    auto [q, r] = divmod(a, b);
    CHECK(q == to_rat(IntPoly{-1, 1}));
    CHECK(r.is_zero());
    CHECK(gcd(a, to_rat(IntPoly{-1, 1})) == to_rat(IntPoly{-1, 1}));
    CHECK(squarefree_part(IntPoly{1, 2, 1}) == IntPoly{1, 1});
    CHECK(primitive_integer(RatPoly{Rational(1, 2), Rational(-1, 3)}) == IntPoly{-3, 2});
    CHECK(IntPoly().is_zero());
}

TEST_CASE("resultant convention and small cases") {
    // Res(x − a, x − b) = b − a
    CHECK(poly_resultant(IntPoly{-2, 1}, IntPoly{-3, 1}) == -1);
    CHECK(poly_resultant(IntPoly{0, 1}, IntPoly{0, 1}) == 0);
    CHECK(poly_resultant(IntPoly{-2, 0, 1}, IntPoly{-2, 0, 1}) == 0);
    CHECK(poly_resultant(IntPoly{-2, 0, 1}, IntPoly{-3, 0, 1}) == 1);
    CHECK_THROWS_WITH(poly_resultant(IntPoly{}, IntPoly{1, 1}), "zero polynomial");
    CHECK(poly_discriminant(IntPoly{-2, 0, 1}) == 8);
    CHECK(poly_discriminant(IntPoly{1, 1, 0, 1}) == -31);
}

TEST_CASE("resultant: multiplicativity and agreement of two algorithms") {
    std::mt19937_64 rng(777);
    for (int i = 0; i < 300; ++i) {
        IntPoly p = random_poly(rng, 1 + static_cast<int>(rng() % 4));
        IntPoly q = random_poly(rng, 1 + static_cast<int>(rng() % 4));
        IntPoly r = random_poly(rng, static_cast<int>(rng() % 4));
        Integer lhs = poly_resultant(p, q * r);
        Integer rhs = poly_resultant(p, q) * poly_resultant(p, r);
        REQUIRE(lhs == rhs);
        REQUIRE(Rational(poly_resultant(p, q)) == poly_resultant(to_rat(p), to_rat(q)));
    }
}

TEST_CASE("root isolation") {
    Rational tol(1, Integer("10000000000"));
    auto r = isolate_complex_roots(IntPoly{-2, 0, 1}, tol);
    REQUIRE(r.size() == 2);
    Rational s2 = bisect(IntPoly{-2, 0, 1}, 1, 2, 80);
    CHECK(std::abs(r[1].re().mid_double() - s2.get_d()) < 1e-10);
    CHECK(std::abs(r[0].re().mid_double() + s2.get_d()) < 1e-10);
    CHECK(r[0].is_real());
    CHECK(r[1].is_real());
    CHECK(r[1].rad_double() <= 1e-10);

    auto one = isolate_complex_roots(IntPoly{-1, 1}, tol);
    REQUIRE(one.size() == 1);
    CHECK(one[0].re().contains(Rational(1)));
    CHECK(one[0].im().contains(Rational(0)));

    auto ii = isolate_complex_roots(IntPoly{1, 0, 1}, tol);
    REQUIRE(ii.size() == 2);
    CHECK(ii[0].re().contains_zero());
    CHECK(std::abs(std::abs(ii[0].im().mid_double()) - 1) < 1e-10);
    CHECK(ii[0].im().mid_double() * ii[1].im().mid_double() < 0);

    CHECK_THROWS_WITH(isolate_complex_roots(IntPoly{1, 2, 1}, tol), "repeated roots");
    CHECK_THROWS_AS(isolate_complex_roots(IntPoly{-2, 0, 1}, Rational(0)), std::invalid_argument);
}

TEST_CASE("root isolation: re-expanded product encloses the coefficients") {
    std::mt19937_64 rng(4242);
    int tested = 0;
    while (tested < 40) {
        IntPoly p = random_poly(rng, 2 + static_cast<int>(rng() % 7), 20);
        if (p.leading() == 0 || !is_squarefree(p)) continue;
        ++tested;
        auto roots = isolate_complex_roots(p, Rational(1, 1000000));
        REQUIRE(roots.size() == static_cast<std::size_t>(p.degree()));
        std::vector<ComplexBall> prod{ComplexBall(RealInterval(p.leading(), 128))};
        for (const auto& z : roots) {
            std::vector<ComplexBall> next(prod.size() + 1, ComplexBall(RealInterval(0L, 128)));
            for (std::size_t k = 0; k < prod.size(); ++k) {
                next[k + 1] = next[k + 1] + prod[k];
                next[k] = next[k] - prod[k] * z;
            }
            prod = std::move(next);
        }
        for (int k = 0; k <= p.degree(); ++k) {
            REQUIRE(prod[k].re().contains(Rational(p.coeff(k))));
            REQUIRE(prod[k].im().contains_zero());
        }
        for (std::size_t a = 0; a < roots.size(); ++a) {
            for (std::size_t b = a + 1; b < roots.size(); ++b) REQUIRE(!roots[a].overlaps(roots[b]));
        }
    }
}

TEST_CASE("integer helpers") {
    CHECK(is_prime(Integer(1000003)));
    CHECK(!is_prime(Integer(1)));
    auto f = factor(Integer("600851475143"));
    REQUIRE(f.size() == 4);
    CHECK(f[3].first == 6857);
    CHECK(squarefree_core(Integer(-72)) == -2);
    CHECK(squarefree_core(Integer(6)) == 6);
    CHECK(valuation(Rational(8, 9), Integer(3)) == -2);
    CHECK(kronecker(Integer(-4), Integer(5)) == 1);
    CHECK(kronecker(Integer(-3), Integer(5)) == -1);
    CHECK(multiplicative_order(Integer(2), Integer(7)) == 3);
    CHECK(euler_phi(64) == 32);
    Integer p("1000000007");
    Integer a = mod(Integer(Integer(123456789) * 123456789), p);
    Integer r = sqrt_mod(a, p);
    CHECK(mod(Integer(r * r), p) == a);
    CHECK_THROWS(sqrt_mod(Integer(5), p));
    Integer q;
    unsigned ell = 0;
    CHECK(prime_power(Integer(128), q, ell));
    CHECK((q == 2 && ell == 7));
    CHECK(!prime_power(Integer(12), q, ell));
    Rational root;
    CHECK(is_square(Rational(49, 4), &root));
    CHECK(root == Rational(7, 2));
}
