#include "doctest.h"

#include "cmheight/algebraic_number.hpp"
#include "cmheight/arith.hpp"
#include "cmheight/resultant.hpp"

#include <random>
#include <set>

using namespace cmh;

namespace {

NFElement random_element(std::mt19937_64& rng, const FieldPtr& K, long span = 30) {
    std::uniform_int_distribution<long> num(-span, span);
    std::uniform_int_distribution<long> den(1, 12);
    std::vector<Rational> c;
    for (int i = 0; i < K->degree(); ++i) {
        Rational q(num(rng), den(rng));
        q.canonicalize();
        c.push_back(q);
    }
    return NFElement(K, c);
}

// p(a) computed inside the field.
NFElement eval_in_field(const IntPoly& p, const NFElement& a) {
    NFElement r(a.field());
    for (auto it = p.coeffs().rbegin(); it != p.coeffs().rend(); ++it) {
        r = r * a + NFElement(a.field(), Rational(*it));
    }
    return r;
}

std::set<Integer> relevant_primes(const NFElement& a) {
    std::set<Integer> ps;
    auto add = [&](const Integer& n) {
        if (n == 0) return;
        for (const auto& [p, e] : factor(n)) ps.insert(p);
    };
    Rational N = a.norm();
    add(N.get_num());
    add(N.get_den());
    for (const auto& c : a.coords()) add(c.get_den());
    add(a.field()->discriminant());
    return ps;
}

}  // namespace

TEST_CASE("field construction") {
    auto Qi = NumberField::quadratic(-1);
    CHECK(Qi->degree() == 2);
    CHECK(Qi->discriminant() == -4);
    auto Q = NumberField::rational();
    CHECK(Q->degree() == 1);
    CHECK(Q->discriminant() == 1);
    auto Z5 = NumberField::cyclotomic(5);
    CHECK(Z5->degree() == 4);
    CHECK(Z5->discriminant() == 125);
    CHECK(NumberField::quadratic(5)->discriminant() == 5);
    CHECK(NumberField::quadratic(2)->discriminant() == 8);
    CHECK_THROWS(NumberField::quadratic(12));
    CHECK_THROWS(NumberField::quadratic(1));
    CHECK_THROWS(NumberField::cyclotomic(2));
    CHECK_THROWS(NumberField::cyclotomic(65));
    for (int n = 3; n <= 64; ++n) {
        auto K = NumberField::cyclotomic(n);
        REQUIRE(K->degree() == euler_phi(n));
    }
    CHECK(NumberField::cyclotomic(3)->discriminant() == -3);
    CHECK(NumberField::cyclotomic(4)->discriminant() == -4);
    CHECK(NumberField::cyclotomic(8)->discriminant() == 256);
    CHECK(NumberField::cyclotomic(6)->discriminant() == -3);
    CHECK(NumberField::parse("Q(sqrt,-7)")->radicand() == -7);
    CHECK(NumberField::parse("Q(zeta,12)")->degree() == 4);
    CHECK(NumberField::parse("Q")->degree() == 1);
    CHECK(NumberField::parse("quadratic 3")->radicand() == 3);
    CHECK_THROWS(NumberField::parse("Q(cbrt,2)"));
    CHECK(cyclotomic_polynomial(12) == IntPoly{1, 0, -1, 0, 1});
}

TEST_CASE("field arithmetic") {
    auto Qi = NumberField::quadratic(-1);
    NFElement i = NFElement::generator(Qi);
    NFElement one(Qi, Rational(1));
    CHECK((one + i) * (one - i) == NFElement(Qi, Rational(2)));
    auto Q5 = NumberField::quadratic(5);
    NFElement phi = (NFElement(Q5, Rational(1)) + NFElement::generator(Q5)) * Rational(1, 2);
    CHECK(phi * phi == NFElement(Q5, {Rational(3, 2), Rational(1, 2)}));
    CHECK_THROWS_AS(NFElement(Qi).inverse(), std::domain_error);
    CHECK_THROWS(NFElement::generator(Qi) + NFElement::generator(Q5));

    std::mt19937_64 rng(99);
    for (int n : {5, 7, 8, 9, 12, 15, 16}) {
        auto K = NumberField::cyclotomic(n);
        for (int t = 0; t < 20; ++t) {
            NFElement a = random_element(rng, K);
            if (a.is_zero()) continue;
            REQUIRE(a * a.inverse() == NFElement(K, Rational(1)));
            NFElement b = random_element(rng, K);
            REQUIRE((a * b).norm() == a.norm() * b.norm());
        }
    }
    NFElement z = NFElement::generator(NumberField::cyclotomic(7));
    NFElement p = z;
    for (int k = 1; k < 7; ++k) p = p * z;
    CHECK(p == NFElement(z.field(), Rational(1)));
    CHECK(parse_element(Qi, "(1,-2/3)") == NFElement(Qi, {Rational(1), Rational(-2, 3)}));
    CHECK(parse_element(Qi, "(1,-2/3)").to_string() == "(1,-2/3)");
    CHECK(parse_element(Qi, "5/10").to_string() == "1/2");
    CHECK(parse_rational("-0.25") == Rational(-1, 4));
    CHECK_THROWS(parse_element(Qi, "(1,2,3)"));
    CHECK_THROWS(parse_rational("1/0"));
}

TEST_CASE("minimal polynomials") {
    auto Q2 = NumberField::quadratic(2);
    CHECK(minimal_polynomial(NFElement::generator(Q2)) == IntPoly{-2, 0, 1});
    CHECK(minimal_polynomial(NFElement(Q2, Rational(3))) == IntPoly{-3, 1});
    auto Q5 = NumberField::quadratic(5);
    CHECK(minimal_polynomial(NFElement(Q5, {Rational(1, 2), Rational(1, 2)})) == IntPoly{-1, -1, 1});
    CHECK(minimal_polynomial(NFElement::generator(NumberField::cyclotomic(9))) == cyclotomic_polynomial(9));
    // ζ_8 + ζ_8^{-1} = √2
    auto Z8 = NumberField::cyclotomic(8);
    NFElement z = NFElement::generator(Z8);
    CHECK(minimal_polynomial(z + z.inverse()) == IntPoly{-2, 0, 1});

    std::mt19937_64 rng(5);
    for (int n : {5, 8, 12, 16, 20, 21}) {
        auto K = NumberField::cyclotomic(n);
        for (int t = 0; t < 10; ++t) {
            NFElement a = random_element(rng, K, 5);
            IntPoly m = minimal_polynomial(a);
            REQUIRE(K->degree() % m.degree() == 0);
            REQUIRE(eval_in_field(m, a).is_zero());
            REQUIRE(content(m) == 1);
            REQUIRE(m.leading() > 0);
            for (const auto& v : archimedean_places(K)) {
                REQUIRE(eval_ball(m, embed(a, v, 256)).contains_zero());
            }
        }
        // an element of the real subfield has a smaller minimal polynomial
        NFElement g = NFElement::generator(K);
        REQUIRE(minimal_polynomial(g + g.inverse()).degree() * 2 == K->degree());
    }
}

TEST_CASE("prime splitting") {
    auto Qi = NumberField::quadratic(-1);
    auto s5 = prime_splitting(Qi, 5);
    REQUIRE(s5.size() == 2);
    for (const auto& v : s5) {
        CHECK(v.e == 1);
        CHECK(v.f == 1);
        CHECK(v.residue_cardinality() == 5);
    }
    auto s3 = prime_splitting(Qi, 3);
    REQUIRE(s3.size() == 1);
    CHECK(s3[0].f == 2);
    CHECK(s3[0].residue_cardinality() == 9);
    auto s2 = prime_splitting(Qi, 2);
    REQUIRE(s2.size() == 1);
    CHECK(s2[0].e == 2);
    CHECK_THROWS_WITH(prime_splitting(Qi, 15), "composite p");

    std::vector<FieldPtr> fields{NumberField::rational(), Qi, NumberField::quadratic(5),
                                 NumberField::quadratic(-3), NumberField::quadratic(2),
                                 NumberField::quadratic(-7), NumberField::quadratic(17)};
    for (int n = 3; n <= 64; ++n) fields.push_back(NumberField::cyclotomic(n));
    for (const auto& K : fields) {
        for (long p = 2; p <= 100; ++p) {
            if (!is_prime(Integer(p))) continue;
            Rational total = 0;
            int ef = 0;
            for (const auto& v : prime_splitting(K, p)) {
                total += v.weight;
                ef += v.e * v.f;
            }
            REQUIRE(total == 1);
            REQUIRE(ef == K->degree());
        }
        Rational arch = 0;
        for (const auto& v : archimedean_places(K)) arch += v.weight;
        REQUIRE(arch == 1);
    }
    // ℚ(ζ_12): 2 has e = 2, f = 2; 5 ≡ 5 mod 12 has f = 2, g = 2
    auto Z12 = NumberField::cyclotomic(12);
    auto t2 = prime_splitting(Z12, 2);
    REQUIRE(t2.size() == 1);
    CHECK(t2[0].e == 2);
    CHECK(t2[0].f == 2);
    CHECK(prime_splitting(Z12, 5).size() == 2);
    CHECK(prime_splitting(Z12, 13).size() == 4);
}

TEST_CASE("finite valuations") {
    auto Qi = NumberField::quadratic(-1);
    for (const auto& v : prime_splitting(Qi, 5)) CHECK(finite_valuation(NFElement(Qi, Rational(5)), v) == 1);
    auto v2 = prime_splitting(Qi, 2)[0];
    CHECK(finite_valuation(NFElement(Qi, {Rational(1), Rational(1)}), v2) == 1);
    CHECK(finite_valuation(NFElement(Qi, Rational(2)), v2) == 2);
    CHECK(finite_valuation(NFElement(Qi, Rational(3)), prime_splitting(Qi, 3)[0]) == 1);
    CHECK_THROWS_WITH(finite_valuation(NFElement(Qi), v2), "valuation of zero");
    // 2 + i has norm 5 and lies in exactly one prime above 5
    auto s5 = prime_splitting(Qi, 5);
    NFElement a(Qi, {Rational(2), Rational(1)});
    CHECK(finite_valuation(a, s5[0]) + finite_valuation(a, s5[1]) == 1);
    CHECK(finite_valuation(a * a.conjugate(), s5[0]) == 1);
    // (1+√5)/2 over 5 (ramified) is a unit; √5 has valuation 1
    auto Q5 = NumberField::quadratic(5);
    auto r5 = prime_splitting(Q5, 5)[0];
    CHECK(finite_valuation(NFElement::generator(Q5), r5) == 1);
    CHECK(finite_valuation(NFElement(Q5, {Rational(1, 2), Rational(1, 2)}), r5) == 0);
    // ℚ(ζ_5): 1 − ζ is a uniformiser above 5
    auto Z5 = NumberField::cyclotomic(5);
    NFElement pi = NFElement(Z5, Rational(1)) - NFElement::generator(Z5);
    auto t5 = prime_splitting(Z5, 5)[0];
    CHECK(t5.e == 4);
    CHECK(finite_valuation(pi, t5) == 1);
    CHECK(finite_valuation(NFElement(Z5, Rational(5)), t5) == 4);
}

TEST_CASE("product formula") {
    std::mt19937_64 rng(2024);
    for (const auto& K : {NumberField::quadratic(-1), NumberField::quadratic(5)}) {
        for (int t = 0; t < 1000; ++t) {
            NFElement a = random_element(rng, K, 60);
            if (a.is_zero()) continue;
            RealInterval sum(0L, 128);
            for (const auto& v : archimedean_places(K)) sum += log_abs(a, v, 128) * v.weight;
            for (const auto& p : relevant_primes(a)) {
                for (const auto& v : prime_splitting(K, p)) sum += log_abs(a, v, 128) * v.weight;
            }
            REQUIRE(sum.contains(Rational(0)));
        }
    }
}

TEST_CASE("embeddings") {
    auto Q2 = NumberField::quadratic(2);
    auto places = archimedean_places(Q2);
    REQUIRE(places.size() == 2);
    ComplexBall s = embed(NFElement::generator(Q2), places[0], 128);
    CHECK(std::abs(s.re().mid_double() - 1.4142135623730951) < 1e-15);
    CHECK(s.is_real());
    auto Qi = NumberField::quadratic(-1);
    auto pi = archimedean_places(Qi);
    REQUIRE(pi.size() == 1);
    CHECK_FALSE(pi[0].real);
    ComplexBall i = embed(NFElement::generator(Qi), pi[0], 128);
    CHECK(i.re().contains(Rational(0)));
    CHECK(i.im().contains(Rational(1)));
    ComplexBall one = embed(NFElement(Qi, Rational(1)), pi[0], 128);
    CHECK(one.re().contains(Rational(1)));
    CHECK(one.re().rad_double() == 0);
    auto Z7 = NumberField::cyclotomic(7);
    CHECK(archimedean_places(Z7).size() == 3);
}

TEST_CASE("algebraic numbers") {
    auto Q2 = NumberField::quadratic(2);
    auto places = archimedean_places(Q2);
    AlgebraicNumber a = AlgebraicNumber::from_element(NFElement::generator(Q2), places[1]);
    CHECK(a.minimal_polynomial() == IntPoly{-2, 0, 1});
    CHECK(a.root().re().mid_double() < 0);
    AlgebraicNumber b = a.refined(Rational(1, Integer(1) << 100));
    CHECK(b.root().rad_double() < 1e-29);
    CHECK(b.root().re().mid_double() < 0);
    CHECK(AlgebraicNumber::from_rational(Rational(-3, 4)).minimal_polynomial() == IntPoly{3, 4});
}
