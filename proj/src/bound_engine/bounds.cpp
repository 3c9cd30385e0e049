#include "cmheight/bounds.hpp"

#include "cmheight/arith.hpp"
#include "cmheight/cm.hpp"
#include "cmheight/torsion.hpp"

#include <cmath>
#include <sstream>

namespace cmh {

namespace {

RealInterval exact(long v, mpfr_prec_t prec = kBoundPrecision) { return RealInterval(v, prec); }

RealInterval pow2(long k, mpfr_prec_t prec = kBoundPrecision) {
    BigFloat b(prec);
    mpfr_set_si_2exp(b.get(), 1, k, MPFR_RNDN);
    return RealInterval(b, b);
}

RealInterval ln2(mpfr_prec_t prec = kBoundPrecision) { return RealInterval::log2(prec); }

Integer ceil_of(const BigFloat& x) {
    Integer z;
    mpfr_get_z(z.get_mpz_t(), x.get(), MPFR_RNDU);
    return z;
}

RealInterval max_one(const RealInterval& j_abs) { return max(exact(1, j_abs.precision()), j_abs); }

}  // namespace

RealInterval j_abs_interval(const Rational& j, mpfr_prec_t prec) {
    return RealInterval(Rational(abs(j)), prec);
}

RealInterval compute_C1(const RealInterval& j_abs, mpfr_prec_t prec) {
    if (j_abs.certainly_negative()) throw std::invalid_argument("|j| must be nonnegative");
    prec = std::max(prec, j_abs.precision());
    RealInterval s = ln2(prec) + RealInterval(Rational(22, 3), prec) + log(max_one(j_abs.with_precision(prec)));
    return s / 6;
}

RealInterval lemma_bound(const Integer& a, const Integer& b, const Integer& p, long f, const Rational& rho,
                         long d, const RealInterval& C1) {
    if (a < 1 || b < 1 || p < 2 || f < 1 || rho <= 0 || d < 1) {
        throw std::invalid_argument("lemma_bound needs positive inputs");
    }
    const mpfr_prec_t prec = std::max(C1.precision(), kBoundPrecision);
    RealInterval inner = log(p, prec) * Rational(f) / RealInterval(Rational(rho * d), prec) - C1;
    return inner / RealInterval(Integer(2 * (a * a + b * b)), prec);
}

RealInterval intermediate_bound(const Integer& q, long d, const RealInterval& C1) {
    if (q < 2) throw std::invalid_argument("q must be at least 2");
    if (d < 1) throw std::invalid_argument("d must be at least 1");
    const mpfr_prec_t prec = std::max(C1.precision(), kBoundPrecision);
    RealInterval lq = log(q, prec);
    RealInterval q4 = RealInterval(Integer(4 * q * q * q * q), prec);
    return (lq / d - C1) / q4;
}

mpfr_prec_t window_precision(long d, const RealInterval& j_abs) {
    const double c1 = compute_C1(j_abs, 64).upper_double();
    return kBoundPrecision + static_cast<mpfr_prec_t>(std::ceil(d * c1 / std::log(2.0)));
}

PrimeWindow prime_window(long d, const RealInterval& C1) {
    if (d < 1) throw std::invalid_argument("d must be at least 1");
    for (mpfr_prec_t prec = std::max(kBoundPrecision, C1.precision()); prec <= 8 * C1.precision(); prec *= 2) {
        RealInterval e = exp(C1.with_precision(prec) * d);
        PrimeWindow w;
        w.lo = e * 2;
        w.hi = e * 4;
        // the first integer ≥ lo must be unambiguous
        const Integer start = ceil_of(w.lo.upper());
        if (ceil_of(w.lo.lower()) != start) continue;
        Integer n = start;
        if (!is_prime(n)) n = next_prime(n);
        if (!RealInterval(n, prec).certainly_less(w.hi)) {
            if (RealInterval(n, prec).overlaps(w.hi)) continue;
            throw std::logic_error("no prime in the window");
        }
        w.p = n;
        // Pratt certificates need p − 1 factored; beyond 100 bits that can take minutes
        const bool small = mpz_sizeinbase(n.get_mpz_t(), 2) <= 100;
        w.certified = small && certify_prime(n);
        if (small && !w.certified) {
            throw std::logic_error("window prime failed certification");
        }
        return w;
    }
    throw PrecisionExhausted("prime window edges unresolved");
}

RealInterval main_bound(long d, const RealInterval& j_abs) {
    if (d < 1) throw std::invalid_argument("d must be at least 1");
    const mpfr_prec_t prec = std::max(j_abs.precision(), kBoundPrecision);
    RealInterval two = pow2(-36 * d * d - 16 * d - 8, prec);
    return two * exp(-(log(max_one(j_abs.with_precision(prec))) * (4 * d * d)));
}

bool ChainReport::all_pass() const {
    for (const auto& l : links) {
        if (!l.informational && !l.pass) return false;
    }
    return true;
}

ChainReport inequality_chain_check(long d, const RealInterval& j_abs) {
    if (d < 1) throw std::invalid_argument("d must be at least 1");
    const mpfr_prec_t prec = kBoundPrecision;
    ChainReport r;
    r.d = d;
    r.j_abs = j_abs;
    r.C1 = compute_C1(j_abs, window_precision(d, j_abs));
    const RealInterval& C1 = r.C1;
    auto add = [&](std::string name, RealInterval lhs, const std::string& rel, RealInterval rhs,
                   bool info = false) {
        bool pass = rel == "<=" ? lhs.certainly_less_eq(rhs)
                  : rel == "<"  ? lhs.certainly_less(rhs)
                                : rhs.certainly_less_eq(lhs);
        r.links.push_back(ChainLink{std::move(name), std::move(lhs), rel, std::move(rhs), pass, info});
    };
    const Integer D(d);
    const Integer poly_d = 5 * D + 27 * D * D + 162 * D * D * D;
    const Integer poly = 5 + 27 * D + 162 * D * D;

    Integer two8d = Integer(1) << static_cast<unsigned long>(8 * d);
    add("(i) 5d+27d^2+162d^3 <= 2^(8d)", RealInterval(poly_d, prec), "<=", RealInterval(two8d, prec));
    add("e^4 <= 2^6", exp(exact(4)), "<=", exact(64));
    add("log 2 + 22/3 <= 9", ln2() + RealInterval(Rational(22, 3), prec), "<=", exact(9));

    PrimeWindow w = prime_window(d, C1);
    r.p = w.p;
    const RealInterval pw(w.p, C1.precision());
    add("window 2e^(dC1) <= p", w.lo, "<=", pw);
    add("window p < 4e^(dC1)", pw, "<", w.hi);

    // target of link (ii): ((5d+27d²+162d³)·4^{4d+4}·e^{4d²C₁})⁻¹
    RealInterval X = exp(-(C1 * (4 * d * d))) * pow2(-2 * (4 * d + 4)) / RealInterval(poly_d, prec);
    Integer q = 1;
    for (long f = 1; f <= d; ++f) {
        q *= w.p;
        RealInterval lhs = (log(q, prec) / d - C1) / (RealInterval(Integer(64 * poly), prec) *
                                                      pow(RealInterval(q, prec), 4));
        add("(ii) q = p^" + std::to_string(f), lhs, ">=", X);
    }

    const RealInterval M = max_one(j_abs.with_precision(prec));
    RealInterval Y = exp(-((C1 * (6 * d * d) + exact(16 * d + 8)) * ln2()));
    add("(iii) X >= 2^(-6d^2C1-16d-8)", X, ">=", Y);
    RealInterval Zd = pow2(-9 * d * d - 16 * d - 8) * exp(-(log(M) * (d * d)));
    add("(iii) 2^(-6d^2C1-16d-8) >= 2^(-9d^2-16d-8) max(1,|j|)^(-d^2)", Y, ">=", Zd);
    add("(iii) X >= 2^(-9d^2-16d-8) max(1,|j|)^(-d^2)", X, ">=", Zd);
    const long D2 = 2 * d;
    RealInterval Z2 = pow2(-9 * D2 * D2 - 16 * D2 - 8) * exp(-(log(M) * (D2 * D2)));
    RealInterval mb = main_bound(d, j_abs);
    add("(iii) degree-2d form >= main_bound", Z2, ">=", mb);
    // the gap step 8(4 + gap²) ≤ 64(5 + 27d + 162d²) at the largest gap 36d + 5
    const Integer g = 36 * D + 5;
    add("gap_factor 8(4+(36d+5)^2) <= 64(5+27d+162d^2)", RealInterval(Integer(8 * (4 + g * g)), prec), "<=",
        RealInterval(Integer(64 * poly), prec), true);
    return r;
}

QCheckReport construct_Q_check(const CurvePoint& P, const CurvePoint& s1P, const CurvePoint& s2P,
                               const Integer& g1, const Integer& g2, double tol) {
    if (*P.curve() != *s1P.curve() || *P.curve() != *s2P.curve()) throw std::invalid_argument("mixed curves");
    const Integer gap = g2 - g1;
    if (gap <= 2) throw std::invalid_argument("need g2 - g1 > 2");
    QCheckReport r{point_sub(point_sub(s2P, s1P), scalar_mul(gap, P))};
    r.h_P = canonical_height_doubling(P, tol).value;
    r.h_Q = canonical_height_doubling(r.Q, tol).value;
    r.rhs = r.h_P * RealInterval(Integer(2 * (4 + gap * gap)), kBoundPrecision);
    r.inequality_holds = !r.rhs.certainly_less(r.h_Q);
    r.Q_torsion = torsion_test(r.Q).torsion;
    r.P_torsion = torsion_test(P).torsion;
    r.violation = r.Q_torsion && !r.P_torsion;
    RealInterval a = canonical_height_doubling(point_sub(s1P, s2P), tol).value;
    RealInterval b = canonical_height_doubling(point_add(s1P, s2P), tol).value;
    r.parallelogram_residual = a + b - r.h_P * 4;
    r.parallelogram_holds = r.parallelogram_residual.contains_zero();
    return r;
}

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::ConsistentNontorsion: return "consistent_nontorsion";
        case Verdict::BelowBoundTorsionPredicted: return "below_bound_torsion_predicted";
        case Verdict::TorsionConfirmed: return "torsion_confirmed";
        case Verdict::Inconsistent: return "inconsistent";
    }
    return "?";
}

BoundCertificate certify_point(const CurvePoint& P, double tol) {
    const auto& E = *P.curve();
    if (!E.over_rationals()) throw std::invalid_argument("certify_point needs a curve over Q");
    const Rational j = E.rational_j();
    cm_lookup(j);
    BoundCertificate c;
    c.curve = E.serialize();
    c.field = P.field()->descriptor();
    c.point = P.to_string();
    c.d = 1;
    c.j_abs = j_abs_interval(j);
    c.C1 = compute_C1(c.j_abs);
    c.window = prime_window(1, c.C1);
    c.q = c.window.p;
    c.intermediate = intermediate_bound(c.q, 1, c.C1);
    c.main = main_bound(1, c.j_abs);
    c.chain = inequality_chain_check(1, c.j_abs);

    double t = tol;
    for (int attempt = 0; attempt < 6; ++attempt, t *= 1e-8) {
        HeightResult h = canonical_height_doubling(P, t);
        c.hhat = h;
        if (c.main.certainly_less(h.value)) {
            c.verdict = Verdict::ConsistentNontorsion;
            return c;
        }
        if (h.value.certainly_less(c.main)) {
            try {
                c.verdict = torsion_test(P).torsion ? Verdict::TorsionConfirmed : Verdict::Inconsistent;
            } catch (const std::exception&) {
                c.verdict = Verdict::BelowBoundTorsionPredicted;
            }
            return c;
        }
    }
    throw PrecisionExhausted("height enclosure straddles the bound");
}

// ---------------------------------------------------------------------------

nlohmann::json to_json(const RealInterval& r) {
    return {{"mid", r.mid().to_string(17)}, {"rad", r.rad().to_string(3)}};
}

nlohmann::json to_json(const ChainReport& c) {
    nlohmann::json links = nlohmann::json::array();
    for (const auto& l : c.links) {
        links.push_back({{"link", l.link},
                         {"lhs", l.lhs.mid().to_string(17)},
                         {"relation", l.relation},
                         {"rhs", l.rhs.mid().to_string(17)},
                         {"pass", l.pass},
                         {"informational", l.informational}});
    }
    return links;
}

nlohmann::json to_json(const BoundCertificate& c) {
    nlohmann::json j;
    j["curve"] = c.curve;
    j["field"] = c.field;
    j["point"] = c.point;
    j["d"] = c.d;
    j["j_abs"] = to_json(c.j_abs);
    j["C1"] = to_json(c.C1);
    j["prime_window"] = {{"lo", c.window.lo.mid().to_string(17)},
                         {"hi", c.window.hi.mid().to_string(17)},
                         {"p", c.window.p.get_str()},
                         {"certified", c.window.certified}};
    j["q"] = c.q.get_str();
    j["intermediate_bound"] = to_json(c.intermediate);
    j["main_bound"] = to_json(c.main);
    if (c.hhat) {
        j["hhat"] = to_json(c.hhat->value);
        j["hhat"]["method"] = to_string(c.hhat->method);
        j["hhat"]["torsion_detected"] = c.hhat->torsion_detected;
    } else {
        j["hhat"] = nullptr;
    }
    j["verdict"] = to_string(c.verdict);
    j["chain_report"] = to_json(c.chain);
    return j;
}

}  // namespace cmh
