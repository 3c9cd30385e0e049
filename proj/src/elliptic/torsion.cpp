#include "cmheight/torsion.hpp"

#include "cmheight/arith.hpp"

namespace cmh {

namespace {

constexpr int kWantedPrimes = 6;
constexpr long kPrimeLimit = 1000;

bool p_integral(const Rational& q, const Integer& p) {
    return !mpz_divisible_p(q.get_den_mpz_t(), p.get_mpz_t());
}

Integer reduce_mod(const Rational& q, const Integer& p) {
    return mod(Integer(q.get_num() * inv_mod(q.get_den(), p)), p);
}

// #E(𝔽_p) for y² = cubic/4 after completing the square: 4x³ + b2x² + 2b4x + b6.
long count_from_b(const Integer& b2, const Integer& b4, const Integer& b6, const Integer& p) {
    const long P = p.get_si();
    long total = P + 1;
    for (long x = 0; x < P; ++x) {
        Integer X = x;
        Integer v = mod(Integer(4 * X * X * X + b2 * X * X + 2 * b4 * X + b6), p);
        total += kronecker(v, p);
    }
    return total;
}

// Reduction data of a curve over ℚ(√D) at a split prime: √D ↦ r.
bool reduce_element(const NFElement& a, const Integer& p, const Integer& r, Integer* out) {
    const auto& c = a.coords();
    Integer acc = 0;
    Integer pw = 1;
    for (const auto& q : c) {
        if (!p_integral(q, p)) return false;
        acc += reduce_mod(q, p) * pw;
        pw = mod(Integer(pw * r), p);
    }
    *out = mod(acc, p);
    return true;
}

int residue_degree(const FieldPtr& L, const Integer& p) {
    switch (L->kind()) {
        case FieldKind::Rational:
            return 1;
        case FieldKind::Quadratic:
            return kronecker(L->discriminant(), p) == 1 ? 1 : 2;
        case FieldKind::Cyclotomic:
            return static_cast<int>(multiplicative_order(p, Integer(L->conductor())).get_si());
    }
    return 1;
}

}  // namespace

Integer reduction_count(const EllipticCurve& E, const Integer& p, int f) {
    const Integer b2 = reduce_mod(E.b2().rational_value(), p);
    const Integer b4 = reduce_mod(E.b4().rational_value(), p);
    const Integer b6 = reduce_mod(E.b6().rational_value(), p);
    const Integer n1 = count_from_b(b2, b4, b6, p);
    const Integer ap = p + 1 - n1;
    // s_k = α^k + β^k
    Integer s0 = 2, s1 = ap;
    Integer pk = p;
    for (int k = 1; k < f; ++k) {
        Integer s2 = ap * s1 - p * s0;
        s0 = s1;
        s1 = s2;
        pk *= p;
    }
    return pk + 1 - s1;
}

TorsionResult torsion_test(const CurvePoint& P) {
    TorsionResult res;
    if (P.is_infinity()) {
        res.torsion = true;
        res.order = 1;
        res.bound = 1;
        return res;
    }
    const EllipticCurve& E = *P.curve();
    const FieldPtr& L = P.field();
    Integer N = 0;
    for (Integer p = 5; p < kPrimeLimit && static_cast<int>(res.primes_used.size()) < kWantedPrimes;
         p = next_prime(p)) {
        if (mpz_divisible_p(L->discriminant().get_mpz_t(), p.get_mpz_t())) continue;
        Integer count;
        if (E.over_rationals()) {
            bool integral = true;
            for (const auto& a : E.rational_a()) integral = integral && p_integral(a, p);
            if (!integral) continue;
            if (reduce_mod(E.discriminant().rational_value(), p) == 0) continue;
            count = reduction_count(E, p, residue_degree(L, p));
        } else {
            // curve over ℚ(√D) with the point in the same field: split primes only
            const Integer D = E.field()->radicand();
            if (kronecker(E.field()->discriminant(), p) != 1) continue;
            const Integer r = sqrt_mod(mod(D, p), p);
            Integer b2, b4, b6, disc;
            if (!reduce_element(E.b2(), p, r, &b2) || !reduce_element(E.b4(), p, r, &b4) ||
                !reduce_element(E.b6(), p, r, &b6) || !reduce_element(E.discriminant(), p, r, &disc)) {
                continue;
            }
            bool integral = true;
            Integer tmp;
            for (const auto& a : E.a_invariants()) integral = integral && reduce_element(a, p, r, &tmp);
            if (!integral || disc == 0) continue;
            count = count_from_b(b2, b4, b6, p);
        }
        N = gcd(N, count);
        res.primes_used.push_back(p);
    }
    if (res.primes_used.size() < 2) throw std::runtime_error("no good primes");
    res.bound = N;
    if (!scalar_mul(N, P).is_infinity()) return res;
    res.torsion = true;
    Integer order = N;
    for (const auto& [q, e] : factor(N)) {
        for (unsigned i = 0; i < e; ++i) {
            Integer smaller = order / q;
            if (!scalar_mul(smaller, P).is_infinity()) break;
            order = smaller;
        }
    }
    res.order = order.get_si();
    return res;
}

}  // namespace cmh
