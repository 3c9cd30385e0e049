#include "cmheight/places.hpp"

#include "cmheight/arith.hpp"
#include "cmheight/roots.hpp"

#include <climits>
#include <numeric>

namespace cmh {

Integer PlaceData::residue_cardinality() const {
    Integer q;
    mpz_pow_ui(q.get_mpz_t(), p.get_mpz_t(), static_cast<unsigned long>(f));
    return q;
}

std::string PlaceData::to_string() const {
    if (archimedean) {
        return std::string(real ? "real" : "complex") + " place #" + std::to_string(embedding);
    }
    return "prime above " + p.get_str() + " #" + std::to_string(index) + " (e=" + std::to_string(e) +
           ", f=" + std::to_string(f) + ")";
}

std::vector<PlaceData> archimedean_places(const FieldPtr& K) {
    std::vector<PlaceData> out;
    const int d = K->degree();
    auto add = [&](int emb, bool real) {
        PlaceData v;
        v.field = K;
        v.archimedean = true;
        v.embedding = emb;
        v.real = real;
        v.weight = Rational(real ? 1 : 2, d);
        v.weight.canonicalize();
        out.push_back(std::move(v));
    };
    switch (K->kind()) {
        case FieldKind::Rational:
            add(0, true);
            break;
        case FieldKind::Quadratic:
            if (K->radicand() > 0) {
                add(0, true);
                add(1, true);
            } else {
                add(0, false);
            }
            break;
        case FieldKind::Cyclotomic: {
            const int n = K->order();
            for (int k = 1; 2 * k < n; ++k) {
                if (std::gcd(k, n) == 1) add(k, false);
            }
            break;
        }
    }
    return out;
}

namespace {

// Integral basis (1, ω) of a quadratic field, ω² = t·ω + n.
struct QuadBasis {
    Integer t, n;
    bool half;  // ω = (1 + √D)/2
};

QuadBasis quad_basis(const FieldPtr& K) {
    const Integer& D = K->radicand();
    if (mod(D, Integer(4)) == 1) return {1, Integer((D - 1) / 4), true};
    return {0, D, false};
}

// α = c0 + c1√D  ↦  (a, b) with α = a + bω
std::pair<Rational, Rational> to_integral_basis(const NFElement& a, const QuadBasis& B) {
    const Rational& c0 = a.coords()[0];
    const Rational& c1 = a.coords()[1];
    if (!B.half) return {c0, c1};
    return {Rational(c0 - c1), Rational(2 * c1)};
}

}  // namespace

std::vector<PlaceData> prime_splitting(const FieldPtr& K, const Integer& p) {
    if (!is_prime(p)) throw std::invalid_argument("composite p");
    const int d = K->degree();
    std::vector<PlaceData> out;
    auto add = [&](int e, int f, int index) {
        PlaceData v;
        v.field = K;
        v.archimedean = false;
        v.p = p;
        v.e = e;
        v.f = f;
        v.index = index;
        v.weight = Rational(e * f, d);
        v.weight.canonicalize();
        out.push_back(std::move(v));
    };
    switch (K->kind()) {
        case FieldKind::Rational:
            add(1, 1, 0);
            break;
        case FieldKind::Quadratic: {
            const int k = kronecker(K->discriminant(), p);
            if (k == 0) {
                add(2, 1, 0);
            } else if (k == -1) {
                add(1, 2, 0);
            } else {
                QuadBasis B = quad_basis(K);
                std::vector<Integer> roots;
                if (p == 2) {
                    for (int r = 0; r < 2; ++r) {
                        if (mod(Integer(r * r - B.t * r - B.n), p) == 0) roots.emplace_back(r);
                    }
                } else {
                    Integer disc = B.t * B.t + 4 * B.n;
                    Integer s = sqrt_mod(disc, p);
                    Integer inv2 = inv_mod(Integer(2), p);
                    roots.push_back(mod(Integer((B.t + s) * inv2), p));
                    roots.push_back(mod(Integer((B.t - s) * inv2), p));
                    if (roots[1] < roots[0]) std::swap(roots[0], roots[1]);
                }
                if (roots.size() != 2 || roots[0] == roots[1]) {
                    throw std::logic_error("split prime without two distinct roots");
                }
                add(1, 1, 0);
                add(1, 1, 1);
                out[0].split_root = roots[0];
                out[1].split_root = roots[1];
            }
            break;
        }
        case FieldKind::Cyclotomic: {
            const int m = K->conductor();
            int pa = 1;
            int rest = m;
            const long pl = p.get_si();
            if (p.fits_slong_p()) {
                while (rest % pl == 0) {
                    rest /= static_cast<int>(pl);
                    pa *= static_cast<int>(pl);
                }
            }
            const int e = static_cast<int>(euler_phi(pa));
            const int f = rest == 1 ? 1 : static_cast<int>(multiplicative_order(p, Integer(rest)).get_si());
            const int g = d / (e * f);
            for (int i = 0; i < g; ++i) add(e, f, i);
            break;
        }
    }
    return out;
}

Rational finite_valuation(const NFElement& a, const PlaceData& v) {
    if (v.archimedean) throw std::invalid_argument("finite place required");
    if (a.is_zero()) throw std::domain_error("valuation of zero");
    const FieldPtr& K = a.field();
    if (*K != *v.field) throw std::invalid_argument("mixed fields");
    if (a.is_rational()) return Rational(v.e * valuation(a.rational_value(), v.p));
    if (K->kind() == FieldKind::Quadratic) {
        QuadBasis B = quad_basis(K);
        auto [x, y] = to_integral_basis(a, B);
        // Scale to an integral element β = m·α with m a power of p times a p-unit.
        Integer den = lcm(x.get_den(), y.get_den());
        long shift = valuation(den, v.p);
        Integer X = x.get_num() * (den / x.get_den());
        Integer Y = y.get_num() * (den / y.get_den());
        long k = std::min(X == 0 ? LONG_MAX : valuation(X, v.p), Y == 0 ? LONG_MAX : valuation(Y, v.p));
        Integer pk;
        mpz_pow_ui(pk.get_mpz_t(), v.p.get_mpz_t(), static_cast<unsigned long>(k));
        X /= pk;
        Y /= pk;
        const Integer N = X * X + B.t * X * Y - B.n * Y * Y;
        long extra = 0;
        if (v.e == 2) {
            extra = mpz_divisible_p(N.get_mpz_t(), v.p.get_mpz_t()) ? 1 : 0;
        } else if (v.f == 1) {
            if (mod(Integer(X + Y * v.split_root), v.p) == 0) extra = valuation(N, v.p);
        }
        return Rational(v.e * (k - shift) + extra);
    }
    // cyclotomic: only places that are alone above p
    if (v.e * v.f == K->degree()) {
        return Rational(valuation(a.norm(), v.p), v.f);
    }
    throw std::domain_error("out of desk scope");
}

ComplexBall embed_generator(const PlaceData& v, mpfr_prec_t prec) {
    if (!v.archimedean) throw std::invalid_argument("archimedean place required");
    const FieldPtr& K = v.field;
    switch (K->kind()) {
        case FieldKind::Rational:
            return ComplexBall(RealInterval(0L, prec));
        case FieldKind::Quadratic: {
            const Integer& D = K->radicand();
            RealInterval s = sqrt(RealInterval(Integer(abs(D)), prec));
            if (v.embedding == 1) s = -s;
            if (D > 0) return ComplexBall(s);
            return ComplexBall(RealInterval(0L, prec), s);
        }
        case FieldKind::Cyclotomic: {
            Rational t(v.embedding, K->order());
            t.canonicalize();
            return exp_2pi_i(ComplexBall(t, Rational(0), prec));
        }
    }
    throw std::logic_error("unreachable");
}

ComplexBall embed(const NFElement& a, const PlaceData& v, mpfr_prec_t prec) {
    if (a.is_rational()) return ComplexBall(RealInterval(a.rational_value(), prec));
    return eval_ball(a.as_poly(), embed_generator(v, prec + 16)).with_precision(prec);
}

RealInterval log_abs(const NFElement& a, const PlaceData& v, mpfr_prec_t prec) {
    if (a.is_zero()) throw std::domain_error("log of zero");
    if (!v.archimedean) {
        return log(v.p, prec) * Rational(-finite_valuation(a, v) / v.e);
    }
    if (a.is_rational()) return log(Rational(abs(a.rational_value())), prec);
    for (mpfr_prec_t w = prec; w <= kMaxPrecision; w *= 2) {
        RealInterval n = norm_sq(embed(a, v, w));
        if (n.certainly_positive()) return (log(n) / 2L).with_precision(prec);
    }
    throw PrecisionExhausted();
}

}  // namespace cmh
