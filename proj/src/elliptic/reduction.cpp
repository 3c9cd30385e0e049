#include "cmheight/reduction.hpp"

#include "cmheight/arith.hpp"

#include <set>

namespace cmh {

std::string to_string(ReductionKind k) {
    switch (k) {
        case ReductionKind::Good:
            return "good";
        case ReductionKind::Multiplicative:
            return "multiplicative";
        case ReductionKind::Additive:
            return "additive";
    }
    return "?";
}

namespace {

constexpr int kWeights[5] = {1, 2, 3, 4, 6};

bool integral_at(const std::array<Rational, 5>& a, const Integer& p) {
    for (const auto& v : a) {
        if (v != 0 && valuation(v, p) < 0) return false;
    }
    return true;
}

Rational disc_of(const std::array<Rational, 5>& a) {
    return EllipticCurve::over_Q(a)->discriminant().rational_value();
}

Rational c4_of(const std::array<Rational, 5>& a) {
    return EllipticCurve::over_Q(a)->c4().rational_value();
}

ModelChange compose(const ModelChange& w1, const ModelChange& w2) {
    // x = u1²x1 + r1, x1 = u2²x2 + r2 ⇒ x = (u1u2)²x2 + u1²r2 + r1
    // y = u1³y1 + u1²s1x1 + t1, y1 = u2³y2 + u2²s2x2 + t2
    ModelChange w;
    w.u = w1.u * w2.u;
    w.r = w1.u * w1.u * w2.r + w1.r;
    w.s = w1.s + w1.u * w2.s;
    w.t = w1.u * w1.u * w1.u * w2.t + w1.u * w1.u * w1.s * w2.r + w1.t;
    return w;
}

}  // namespace

ModelChange integral_scaling(const std::array<Rational, 5>& a) {
    // smallest m with m^w·a_w integral for each weight w
    Integer m = 1;
    for (std::size_t i = 0; i < 5; ++i) {
        if (a[i] == 0) continue;
        for (const auto& [p, e] : factor(a[i].get_den())) {
            // need p^{k·w} ≥ p^e
            unsigned k = (e + kWeights[i] - 1) / kWeights[i];
            Integer pk;
            mpz_pow_ui(pk.get_mpz_t(), p.get_mpz_t(), k);
            while (!mpz_divisible_p(m.get_mpz_t(), pk.get_mpz_t())) m *= p;
        }
    }
    ModelChange w;
    w.u = Rational(1, m);
    w.u.canonicalize();
    return w;
}

ReductionData reduction_over_Q(const EllipticCurve& E, const Integer& p) {
    if (!is_prime(p)) throw std::invalid_argument("composite p");
    std::array<Rational, 5> a = E.rational_a();
    ReductionData rd;
    rd.p = p;
    // p-integral by u = p^{−k}
    ModelChange total;
    long k = 0;
    for (std::size_t i = 0; i < 5; ++i) {
        if (a[i] == 0) continue;
        long v = valuation(a[i], p);
        if (v < 0) k = std::max(k, (-v + kWeights[i] - 1) / kWeights[i]);
    }
    if (k > 0) {
        rd.input_minimal = false;
        Integer pk;
        mpz_pow_ui(pk.get_mpz_t(), p.get_mpz_t(), static_cast<unsigned long>(k));
        total.u = Rational(1, pk);
        total.u.canonicalize();
        a = transform_a(a, total);
    }
    if (p >= 5) {
        // Kraus: for p ≥ 5 the model is minimal unless p⁴ | c4, p⁶ | c6;
        // the short model scaled by p^k is then minimal.
        auto Ec = EllipticCurve::over_Q(a);
        const Rational c4 = Ec->c4().rational_value(), c6 = Ec->c6().rational_value();
        long k = valuation(disc_of(a), p) / 12;
        if (c4 != 0) k = std::min(k, valuation(c4, p) / 4);
        if (c6 != 0) k = std::min(k, valuation(c6, p) / 6);
        if (k > 0) {
            const Rational b2 = Ec->b2().rational_value();
            Integer pk;
            mpz_pow_ui(pk.get_mpz_t(), p.get_mpz_t(), static_cast<unsigned long>(k));
            ModelChange w;
            w.u = Rational(pk, 6);
            w.u.canonicalize();
            w.r = -b2 / 12;
            w.s = -a[0] / 2;
            w.t = -a[2] / 2 + a[0] * b2 / 24;
            total = compose(total, w);
            a = transform_a(a, w);
            rd.input_minimal = false;
        }
    } else {
        // brute force over u = p substitutions while v(Δ) ≥ 12
        const long P = p.get_si();
        while (valuation(disc_of(a), p) >= 12) {
            bool found = false;
            for (long s = 0; s < P && !found; ++s) {
                for (long r = 0; r < P * P && !found; ++r) {
                    for (long t = 0; t < P * P * P && !found; ++t) {
                        ModelChange w;
                        w.u = Rational(p);
                        w.r = r;
                        w.s = s;
                        w.t = t;
                        std::array<Rational, 5> c = transform_a(a, w);
                        if (integral_at(c, p)) {
                            total = compose(total, w);
                            a = c;
                            found = true;
                        }
                    }
                }
            }
            if (!found) break;
            rd.input_minimal = false;
        }
    }
    rd.to_minimal = total;
    rd.minimal_a = a;
    const Rational D = disc_of(a);
    rd.disc_valuation = valuation(D, p);
    if (rd.disc_valuation == 0) {
        rd.kind = ReductionKind::Good;
    } else {
        const Rational c4 = c4_of(a);
        rd.kind = (c4 != 0 && valuation(c4, p) == 0) ? ReductionKind::Multiplicative : ReductionKind::Additive;
    }
    return rd;
}

std::vector<Integer> candidate_bad_primes(const EllipticCurve& E) {
    std::set<Integer> ps;
    const Rational D = E.discriminant().rational_value();
    for (const auto& [p, e] : factor(D.get_num())) ps.insert(p);
    for (const auto& v : E.rational_a()) {
        if (v.get_den() != 1) {
            for (const auto& [p, e] : factor(v.get_den())) ps.insert(p);
        }
    }
    return std::vector<Integer>(ps.begin(), ps.end());
}

}  // namespace cmh
